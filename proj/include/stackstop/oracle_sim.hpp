#pragma once
#include <cstdint>

#include "stackstop/decision_rules.hpp"
#include "stackstop/sequence_model.hpp"

namespace stackstop {

struct GameOutcome {
    bool p1_success = false;
    bool p2_success = false;
};

// Plays one realisation. The policy must be reset by the caller between
// games (play_game does it).
GameOutcome play_game(const RankSequence& seq, const P1Policy& p1, P2Policy& p2);

struct ExactResult {
    Rational u1; // P(Player 1 obtains the best object)
    Rational u2;
};

// Iterates all N! permutations in lexicographic order and returns the exact
// success probabilities. Capped at N = 12 (about 4.8e8 permutations);
// allow_n13 lifts the cap by one for machines that can afford it.
ExactResult enumerate_exact(int n_objects, const P1Policy& p1, const P2Policy& p2,
                            bool allow_n13 = false);

struct SimReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0; // Player 2 obtains the best object
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
};

// Monte Carlo over uniform random permutations. Trial i draws its own
// generator from derive_seed(seed, i), so the report is identical for any
// shard count; max_threads = 0 means "use STACKSTOP_THREADS or the hardware".
SimReport simulate(int n_objects, const P1Policy& p1, const P2Policy& p2,
                   std::uint64_t trials, std::uint64_t seed, int max_threads = 0);

struct InferenceReport {
    std::uint64_t decision_points = 0;
    std::uint64_t violations = 0;
};

// Checks, against ground truth, the two inferences Player 2's rules rely on
// at every decision point under an optimal Player 1: the original moment of
// the current object, and whether Player 1 has already accepted. Also flags
// any post-acceptance candidate whose original relative rank exceeds 2.
// trials = 0 runs the full permutation set (N <= 12).
InferenceReport verify_candidate_inference(int n_objects, std::uint64_t trials, std::uint64_t seed);

// Thread cap from the STACKSTOP_THREADS environment variable (0 = unset).
int env_thread_cap();

} // namespace stackstop
