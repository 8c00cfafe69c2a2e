#pragma once
#include <stdexcept>
#include <vector>

#include "stackstop/rational.hpp"

namespace stackstop {

// The two tail sums that drive every finite-N recursion:
//   s1(i) = sum_{k=i+1}^{N} 1/(k-1)           (valid for 1 <= i <= N)
//   t2(i) = sum_{k=i+1}^{N} 1/((k-1)(k-2))    (valid for 2 <= i <= N)
// s2(n) = (n-1) * t2(n) is the S_2 series of the acceptance thresholds.
template <class Real>
class TailSums {
public:
    explicit TailSums(int n_objects) : n_(n_objects), s1_(n_objects + 1), t2_(n_objects + 1) {
        s1_[n_] = Real(0);
        t2_[n_] = Real(0);
        for (int i = n_ - 1; i >= 1; --i) {
            s1_[i] = s1_[i + 1] + ratio<Real>(1, i);
            if (i >= 2) t2_[i] = t2_[i + 1] + ratio<Real>(1, static_cast<long long>(i) * (i - 1));
        }
    }

    int n_objects() const { return n_; }

    const Real& s1(int i) const {
        if (i < 1 || i > n_) throw std::out_of_range("TailSums::s1");
        return s1_[i];
    }
    const Real& t2(int i) const {
        if (i < 2 || i > n_) throw std::out_of_range("TailSums::t2");
        return t2_[i];
    }
    Real s2(int n) const { return Real(n - 1) * t2(n); }

private:
    int n_;
    std::vector<Real> s1_;
    std::vector<Real> t2_;
};

} // namespace stackstop
