#include "stackstop/sequence_model.hpp"

#include <numeric>
#include <stdexcept>

#include "stackstop/rng.hpp"

namespace stackstop {

std::vector<int> relative_ranks(std::span<const int> abs_ranks) {
    const int n = static_cast<int>(abs_ranks.size());
    if (n < 1) throw std::invalid_argument("relative_ranks: empty sequence");
    std::vector<char> seen(n + 1, 0);
    for (int a : abs_ranks) {
        if (a < 1 || a > n || seen[a]) {
            throw std::invalid_argument("relative_ranks: input is not a permutation of 1..N");
        }
        seen[a] = 1;
    }
    return prefix_ranks(abs_ranks);
}

std::vector<int> prefix_ranks(std::span<const int> values) {
    const int n = static_cast<int>(values.size());
    std::vector<int> rel(n);
    for (int j = 0; j < n; ++j) {
        int rank = 1;
        for (int i = 0; i < j; ++i) {
            if (values[i] == values[j]) throw std::invalid_argument("prefix_ranks: values must be distinct");
            if (values[i] < values[j]) ++rank;
        }
        rel[j] = rank;
    }
    return rel;
}

RankSequence make_rank_sequence(std::vector<int> abs_ranks) {
    RankSequence seq;
    seq.n_objects = static_cast<int>(abs_ranks.size());
    seq.rel_ranks = relative_ranks(abs_ranks);
    seq.abs_ranks = std::move(abs_ranks);
    return seq;
}

RankSequence random_permutation(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_permutation: n must be positive");
    std::vector<int> a(n);
    std::iota(a.begin(), a.end(), 1);
    SplitMix64 rng(seed);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(a[i], a[j]);
    }
    return make_rank_sequence(std::move(a));
}

Player2View player2_view(const RankSequence& seq, int p1_threshold) {
    const int n = seq.n_objects;
    if (p1_threshold < 1 || p1_threshold > n + 1) {
        throw std::invalid_argument("player2_view: threshold out of range");
    }
    Player2View view;
    view.p1_accept_moment = n + 1;
    for (int j = p1_threshold; j <= n; ++j) {
        if (seq.rel_ranks[j - 1] == 1) {
            view.p1_accept_moment = j;
            break;
        }
    }
    int best = n + 1;
    for (int j = 1; j <= n; ++j) {
        if (j == view.p1_accept_moment) continue;
        view.observed.push_back(seq.abs_ranks[j - 1]);
        view.observed_moments.push_back(j);
        if (seq.abs_ranks[j - 1] < best) {
            best = seq.abs_ranks[j - 1];
            view.p2_candidate_moments.push_back(j);
        }
    }
    return view;
}

} // namespace stackstop
