#pragma once

#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qtrio/errors.hpp"
#include "qtrio/scalar.hpp"

namespace qtrio {

/// (a;q)_k = prod_{j=0}^{k-1} (1 - a q^j). Empty product for k = 0.
template <class S>
S q_pochhammer(const S& a, const S& q, int k) {
  S acc(1);
  S aq = a;
  for (int j = 0; j < k; ++j) {
    acc *= S(1) - aq;
    aq *= q;
  }
  return acc;
}

/// (b_1,...,b_r;q)_k = (b_1;q)_k ... (b_r;q)_k.
template <class S>
S q_pochhammer_multi(const std::vector<S>& bases, const S& q, int k) {
  S acc(1);
  for (const S& b : bases) acc *= q_pochhammer(b, q, k);
  return acc;
}

/// Spec of a terminating r+1_phi_r series. `upper` carries all numerator
/// parameters including the terminating q^{-n}; `terminate_at` is that n.
template <class S>
struct PhiSpec {
  std::vector<S> upper;
  std::vector<S> lower;
  S q;
  S z;
  int terminate_at = 0;

  /// Builds the spec from the terminating index and the remaining
  /// numerator parameters; prepends q^{-n} to `upper`.
  static PhiSpec terminating(int n, std::vector<S> upper_tail,
                             std::vector<S> lower, S q, S z) {
    PhiSpec spec;
    spec.upper.reserve(upper_tail.size() + 1);
    spec.upper.push_back(pow_int(q, -n));
    for (auto& u : upper_tail) spec.upper.push_back(std::move(u));
    spec.lower = std::move(lower);
    spec.q = std::move(q);
    spec.z = std::move(z);
    spec.terminate_at = n;
    spec.validate();
    return spec;
  }

  void validate() const {
    if (upper.size() != lower.size() + 1)
      throw ConfigError("phi: need count(upper) = count(lower) + 1");
    if (terminate_at < 0) throw ConfigError("phi: negative terminating index");
    if constexpr (scalar_traits<S>::exact) {
      S check = upper.front() * pow_int(q, terminate_at);
      if (check != S(1))
        throw ConfigError("phi: upper[0] is not q^{-terminate_at}");
    }
  }
};

/// Index of the last term that can be nonzero: some upper parameter may be a
/// negative q-power q^{-m} with m < n, killing every term past k = m.
template <class S>
int effective_termination(const std::vector<S>& upper, const S& q, int n) {
  if constexpr (!scalar_traits<S>::exact) return n;
  int eff = n;
  for (const S& a : upper) {
    S aq = a;
    for (int m = 0; m < eff; ++m) {
      if (aq == S(1)) {
        eff = m;  // (a;q)_k = 0 for k > m
        break;
      }
      aq *= q;
    }
  }
  return eff;
}

namespace detail {

template <class S>
std::string scalar_repr(const S& v) {
  if constexpr (scalar_traits<S>::exact) {
    return to_string(v);
  } else {
    return to_string(v);
  }
}

/// Eager pole scan: every (b_i;q)_k with k <= n must be nonzero, including
/// the implicit (q;q)_k whose index is lower.size().
template <class S>
void check_poles(const std::vector<S>& lower, const S& q, int n) {
  for (std::size_t i = 0; i <= lower.size(); ++i) {
    S base = (i < lower.size()) ? lower[i] : q;
    S bq = base;
    for (int j = 0; j < n; ++j) {
      if (bq == S(1)) {
        std::ostringstream os;
        os << "pole: denominator factor (b;q)_k vanishes at parameter "
           << (i < lower.size() ? std::to_string(i) : std::string("(q;q)"))
           << ", k = " << (j + 1) << ", base = " << scalar_repr(base);
        throw PoleError(static_cast<int>(i), j + 1, os.str());
      }
      bq *= q;
    }
  }
}

}  // namespace detail

/// Terminating basic hypergeometric sum
///   sum_{k=0}^{n} (upper;q)_k / ((lower;q)_k (q;q)_k) z^k.
/// Pochhammer ladders are accumulated incrementally, one factor per step.
template <class S>
S phi(const PhiSpec<S>& spec) {
  spec.validate();
  const int n = effective_termination(spec.upper, spec.q, spec.terminate_at);
  detail::check_poles(spec.lower, spec.q, n);

  S sum(1);
  S term(1);
  std::vector<S> up = spec.upper;  // running a_i q^k
  std::vector<S> lo = spec.lower;
  S qpow = spec.q;  // q^{k+1} for the (q;q) ladder
  for (int k = 1; k <= n; ++k) {
    S ratio = spec.z;
    for (S& u : up) {
      ratio *= S(1) - u;
      u *= spec.q;
    }
    for (S& b : lo) {
      ratio /= S(1) - b;
      b *= spec.q;
    }
    ratio /= S(1) - qpow;
    qpow *= spec.q;
    term *= ratio;
    if (is_zero(term)) break;  // a numerator ladder hit zero; all later terms vanish
    sum += term;
  }
  return sum;
}

/// Very-well-poised terminating series at z = q:
///   sum_k (1 - a q^{2k})/(1 - a) (a;q)_k prod_i (b_i;q)_k
///         / ((q;q)_k prod_i (a q / b_i;q)_k) q^k,
/// the series shape of a 10phi9 whose (q sqrt(a), -q sqrt(a)) over
/// (sqrt(a), -sqrt(a)) pair has been folded into the (1 - a q^{2k})/(1 - a)
/// factor, so no square root is ever materialized.
template <class S>
S very_well_poised_phi(const S& a, const std::vector<S>& tail_upper, const S& q,
                       int terminate_at) {
  if (a == S(1)) throw PoleError(-1, 0, "pole: very-well-poised factor 1 - a vanishes");
  std::vector<S> lower;
  lower.reserve(tail_upper.size());
  for (const S& b : tail_upper) {
    if (is_zero(b))
      throw PoleError(-1, 0, "pole: very-well-poised tail parameter is zero");
    lower.push_back(a * q / b);
  }
  std::vector<S> upper = tail_upper;
  upper.push_back(a);
  const int n = effective_termination(upper, q, terminate_at);
  detail::check_poles(lower, q, n);

  S sum(1);
  S term(1);
  std::vector<S> up = tail_upper;
  std::vector<S> lo = lower;
  S apow = a;        // a q^k
  S aq2 = a * q * q; // a q^{2k}
  S qpow = q;
  const S one(1);
  for (int k = 1; k <= n; ++k) {
    S ratio = q;  // z = q
    for (S& u : up) {
      ratio *= one - u;
      u *= q;
    }
    for (S& b : lo) {
      ratio /= one - b;
      b *= q;
    }
    ratio *= one - apow;
    apow *= q;
    ratio /= one - qpow;
    qpow *= q;
    term *= ratio;
    if (is_zero(term)) break;
    sum += (one - aq2) / (one - a) * term;
    aq2 *= q * q;
  }
  return sum;
}

/// Read-mostly cache of Pochhammer ladders keyed by (base, q); extended
/// lazily under a lock, so concurrent grid sweeps can share it.
template <class S>
class PochhammerCache {
 public:
  S get(const S& base, const S& q, int k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto& ladder = tab_[{base, q}];
    if (ladder.empty()) ladder.push_back(S(1));
    while (static_cast<int>(ladder.size()) <= k) {
      int j = static_cast<int>(ladder.size()) - 1;
      ladder.push_back(ladder.back() * (S(1) - base * pow_int(q, j)));
    }
    return ladder[static_cast<std::size_t>(k)];
  }

  std::size_t entries() const {
    std::lock_guard<std::mutex> lock(mu_);
    return tab_.size();
  }

 private:
  mutable std::mutex mu_;
  std::map<std::pair<S, S>, std::vector<S>> tab_;
};

}  // namespace qtrio
