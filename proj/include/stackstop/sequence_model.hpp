#pragma once
#include <cstdint>
#include <span>
#include <vector>

namespace stackstop {

// A permutation of absolute ranks 1..N (rank 1 = best) with the derived
// relative ranks. Moments are 1-based throughout: index j-1 holds moment j.
struct RankSequence {
    int n_objects = 0;
    std::vector<int> abs_ranks; // a permutation of 1..N
    std::vector<int> rel_ranks; // rel_ranks[j-1] = rank of object j among the first j
};

// R_1..R_N: R_j is the rank of abs_ranks[j-1] among the first j entries.
// Throws std::invalid_argument unless the input is a permutation of 1..N.
std::vector<int> relative_ranks(std::span<const int> abs_ranks);

// Rank-among-prefix for any sequence of distinct values (what Player 2 sees
// on his thinned stream, where the values are no longer a full permutation).
std::vector<int> prefix_ranks(std::span<const int> values);

RankSequence make_rank_sequence(std::vector<int> abs_ranks);

// Uniform over all N! permutations; Fisher-Yates driven by SplitMix64, so a
// given (n, seed) pair yields the same sequence on every platform.
RankSequence random_permutation(int n, std::uint64_t seed);

// What remains for Player 2 after Player 1 plays "accept the first object of
// relative rank 1 at moment >= p1_threshold".
struct Player2View {
    int p1_accept_moment = 0;          // mu_0; N+1 when Player 1 never accepts
    std::vector<int> observed;         // abs ranks in original order, accepted object removed
    std::vector<int> observed_moments; // original moment of each observed object
    std::vector<int> p2_candidate_moments; // original moments where Player 2 sees a best-so-far object
};

Player2View player2_view(const RankSequence& seq, int p1_threshold);

} // namespace stackstop
