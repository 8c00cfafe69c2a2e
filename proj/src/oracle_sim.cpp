#include "stackstop/oracle_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <span>
#include <stdexcept>
#include <thread>

#include "stackstop/classical_secretary.hpp"
#include "stackstop/rng.hpp"

namespace stackstop {

namespace {

// Candidacy for either player is "best seen so far", so a playout needs only
// the absolute ranks; no O(N^2) relative-rank pass.
GameOutcome play_raw(std::span<const int> abs_ranks, const P1Policy& p1, P2Policy& p2) {
    const int n = static_cast<int>(abs_ranks.size());
    int mu0 = n + 1;
    int best = n + 1;
    for (int moment = 1; moment <= n; ++moment) {
        if (abs_ranks[moment - 1] < best) {
            best = abs_ranks[moment - 1];
            if (p1.accept(moment, true)) {
                mu0 = moment;
                break;
            }
        }
    }
    GameOutcome out;
    out.p1_success = mu0 <= n && abs_ranks[mu0 - 1] == 1;

    p2.reset();
    int index = 0;
    best = n + 1;
    for (int moment = 1; moment <= n; ++moment) {
        if (moment == mu0) continue;
        ++index;
        if (abs_ranks[moment - 1] < best) {
            best = abs_ranks[moment - 1];
            if (p2.on_candidate(index)) {
                out.p2_success = abs_ranks[moment - 1] == 1;
                break;
            }
        }
    }
    return out;
}

} // namespace

GameOutcome play_game(const RankSequence& seq, const P1Policy& p1, P2Policy& p2) {
    return play_raw(seq.abs_ranks, p1, p2);
}

ExactResult enumerate_exact(int n_objects, const P1Policy& p1, const P2Policy& p2,
                            bool allow_n13) {
    const int cap = allow_n13 ? 13 : 12;
    if (n_objects < 1 || n_objects > cap) {
        throw std::invalid_argument("enumerate_exact: N exceeds the exhaustive cap");
    }
    std::vector<int> perm(n_objects);
    std::iota(perm.begin(), perm.end(), 1);
    auto policy = p2.clone();
    std::uint64_t total = 0, wins1 = 0, wins2 = 0;
    do {
        const GameOutcome out = play_raw(perm, p1, *policy);
        ++total;
        if (out.p1_success) ++wins1;
        if (out.p2_success) ++wins2;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {Rational(wins1, total), Rational(wins2, total)};
}

int env_thread_cap() {
    const char* v = std::getenv("STACKSTOP_THREADS");
    if (!v) return 0;
    const int n = std::atoi(v);
    return n > 0 ? n : 1;
}

SimReport simulate(int n_objects, const P1Policy& p1, const P2Policy& p2,
                   std::uint64_t trials, std::uint64_t seed, int max_threads) {
    if (n_objects < 1) throw std::invalid_argument("simulate: need N >= 1");
    if (trials < 1) throw std::invalid_argument("simulate: need trials >= 1");
    int threads = max_threads > 0 ? max_threads : env_thread_cap();
    if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp<int>(threads, 1, 64);
    if (static_cast<std::uint64_t>(threads) > trials) threads = static_cast<int>(trials);

    std::vector<std::uint64_t> wins(threads, 0);
    auto run_range = [&](int shard, std::uint64_t lo, std::uint64_t hi) {
        auto policy = p2.clone();
        std::uint64_t w = 0;
        std::vector<int> perm(n_objects);
        for (std::uint64_t i = lo; i < hi; ++i) {
            SplitMix64 rng(derive_seed(seed, i));
            std::iota(perm.begin(), perm.end(), 1);
            for (int j = n_objects - 1; j > 0; --j) {
                const auto r = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(j) + 1));
                std::swap(perm[j], perm[r]);
            }
            if (play_raw(perm, p1, *policy).p2_success) ++w;
        }
        wins[shard] = w;
    };

    if (threads == 1) {
        run_range(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = trials / threads;
        const std::uint64_t rem = trials % threads;
        std::uint64_t lo = 0;
        for (int s = 0; s < threads; ++s) {
            const std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(s) < rem ? 1 : 0);
            pool.emplace_back(run_range, s, lo, hi);
            lo = hi;
        }
        for (auto& t : pool) t.join();
    }

    SimReport report;
    report.trials = trials;
    report.seed = seed;
    for (std::uint64_t w : wins) report.successes += w;
    report.estimate = static_cast<double>(report.successes) / static_cast<double>(trials);
    report.std_error = std::sqrt(report.estimate * (1.0 - report.estimate) / static_cast<double>(trials));
    return report;
}

namespace {

void check_inference(const RankSequence& seq, int n_star, InferenceReport& report) {
    const int n = seq.n_objects;
    const Player2View view = player2_view(seq, n_star);
    const int mu0 = view.p1_accept_moment;
    int best_seen = n + 1;
    for (std::size_t i = 0; i < view.observed.size(); ++i) {
        if (view.observed[i] >= best_seen) continue;
        best_seen = view.observed[i];
        const int index = static_cast<int>(i) + 1;
        const int actual_moment = view.observed_moments[i];
        ++report.decision_points;
        const int inferred_moment = index < n_star ? index : index + 1;
        const bool inferred_done = index >= n_star;
        const bool actually_done = mu0 < actual_moment;
        bool ok = inferred_moment == actual_moment && inferred_done == actually_done;
        if (actually_done && seq.rel_ranks[actual_moment - 1] > 2) ok = false;
        if (!ok) ++report.violations;
    }
}

} // namespace

InferenceReport verify_candidate_inference(int n_objects, std::uint64_t trials, std::uint64_t seed) {
    const int n_star = solve_p1<double>(n_objects).threshold;
    InferenceReport report;
    if (trials == 0) {
        if (n_objects > 12) throw std::invalid_argument("verify_candidate_inference: exhaustive mode needs N <= 12");
        std::vector<int> perm(n_objects);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            check_inference(make_rank_sequence(perm), n_star, report);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return report;
    }
    for (std::uint64_t i = 0; i < trials; ++i) {
        check_inference(random_permutation(n_objects, derive_seed(seed, i)), n_star, report);
    }
    return report;
}

} // namespace stackstop
