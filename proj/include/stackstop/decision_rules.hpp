#pragma once
#include <memory>
#include <stdexcept>
#include <vector>

#include "stackstop/exact_response.hpp"
#include "stackstop/near_optimal.hpp"
#include "stackstop/posterior.hpp"

namespace stackstop {

// Player 1 sees the original sequence; she is consulted at every moment with
// her only observable, "is the current object relatively best".
class P1Policy {
public:
    virtual ~P1Policy() = default;
    virtual bool accept(int moment, bool is_candidate) const = 0;
};

class P1Threshold final : public P1Policy {
public:
    explicit P1Threshold(int n_star) : n_star_(n_star) {}
    bool accept(int moment, bool is_candidate) const override {
        return is_candidate && moment >= n_star_;
    }
    int n_star() const { return n_star_; }

private:
    int n_star_;
};

// Player 2 is consulted only at his decision points. He is told nothing but
// the index of the current object within his own stream; anything else
// (original moment, whether Player 1 is done) must be inferred inside the
// policy. That keeps the information asymmetry structural.
class P2Policy {
public:
    virtual ~P2Policy() = default;
    virtual void reset() = 0;
    virtual bool on_candidate(int stream_index) = 0;
    virtual std::unique_ptr<P2Policy> clone() const = 0;
};

// pi_1 of the four-object analysis: take the first object.
class P2AcceptFirst final : public P2Policy {
public:
    void reset() override {}
    bool on_candidate(int) override { return true; }
    std::unique_ptr<P2Policy> clone() const override { return std::make_unique<P2AcceptFirst>(); }
};

// Accept the first candidate whose inferred original moment is >= tau.
// tau = N reproduces the "only at the final moment" rule.
class P2MomentThreshold final : public P2Policy {
public:
    P2MomentThreshold(int tau, int n_star) : tau_(tau), n_star_(n_star) {}
    void reset() override {}
    bool on_candidate(int stream_index) override {
        const int moment = stream_index < n_star_ ? stream_index : stream_index + 1;
        return moment >= tau_;
    }
    std::unique_ptr<P2Policy> clone() const override {
        return std::make_unique<P2MomentThreshold>(tau_, n_star_);
    }

private:
    int tau_;
    int n_star_;
};

// The optimal response: accept early candidates from n0, and past n* accept
// the current candidate iff its posterior clears q_n. Real = Rational gives
// exact tie handling for the small-N oracle comparisons.
template <class Real>
class P2OptimalRule final : public P2Policy {
public:
    P2OptimalRule(int n_star, int n0, std::vector<Real> q_by_moment)
        : n_star_(n_star), n0_(n0), q_(std::move(q_by_moment)) {}

    void reset() override {
        count_ = 0;
        last_moment_ = 0;
        p_ = Real(0);
    }

    bool on_candidate(int stream_index) override {
        if (stream_index < n_star_) return stream_index >= n0_;
        const int moment = stream_index + 1; // Player 1 already holds one object
        p_ = (count_ == 0) ? ratio<Real>(1, 2) : update_posterior(last_moment_, moment, p_);
        ++count_;
        last_moment_ = moment;
        return p_ >= q_[moment];
    }

    std::unique_ptr<P2Policy> clone() const override {
        return std::make_unique<P2OptimalRule>(n_star_, n0_, q_);
    }

private:
    int n_star_;
    int n0_;
    std::vector<Real> q_; // indexed by moment; entries at n <= n* unused
    int count_ = 0;
    int last_moment_ = 0;
    Real p_{};
};

inline std::unique_ptr<P2Policy> p2_optimal(const GameSolution& sol) {
    if (sol.exact) {
        std::vector<Rational> q(sol.n_objects + 1, Rational(0));
        for (std::size_t i = 0; i < sol.q_exact.size(); ++i) q[sol.n_star + 1 + i] = sol.q_exact[i];
        return std::make_unique<P2OptimalRule<Rational>>(sol.n_star, sol.n0, std::move(q));
    }
    std::vector<double> q(sol.n_objects + 1, 0.0);
    for (std::size_t i = 0; i < sol.q.size(); ++i) q[sol.n_star + 1 + i] = sol.q[i];
    return std::make_unique<P2OptimalRule<double>>(sol.n_star, sol.n0, std::move(q));
}

// The count-based rule: accept the m-th candidate after n* iff n >= n_m.
class P2NearOptimalRule final : public P2Policy {
public:
    P2NearOptimalRule(int n_star, int n0_a, std::vector<int> n_m)
        : n_star_(n_star), n0_a_(n0_a), n_m_(std::move(n_m)) {}

    void reset() override { count_ = 0; }

    bool on_candidate(int stream_index) override {
        if (stream_index < n_star_) return stream_index >= n0_a_;
        const int moment = stream_index + 1;
        ++count_;
        if (count_ > static_cast<int>(n_m_.size())) return true; // m >= m0
        return moment >= n_m_[count_ - 1];
    }

    std::unique_ptr<P2Policy> clone() const override {
        return std::make_unique<P2NearOptimalRule>(n_star_, n0_a_, n_m_);
    }

private:
    int n_star_;
    int n0_a_;
    std::vector<int> n_m_;
    int count_ = 0;
};

inline std::unique_ptr<P2Policy> p2_near_optimal(const NearOptimalSolution& sol) {
    return std::make_unique<P2NearOptimalRule>(sol.n_star, sol.n0_a, sol.n_m);
}

} // namespace stackstop
