#include "quasiq/class_solver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "quasiq/errors.hpp"

namespace quasiq {

namespace {

mpz_class ui(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

mpz_class pow_ui(std::uint64_t base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// k with (M^2/d) k^2 + (c - M) k == r (mod M^e d), by Hensel per prime and CRT.
mpz_class solve_phi_congruence(std::uint64_t base, std::uint64_t d, std::uint64_t c, const mpz_class& r,
                               std::uint64_t e) {
  const mpz_class quad = ui(base / d) * ui(base);
  const mpz_class lin = ui(c) - ui(base);
  mpz_class k = 0;
  mpz_class joined = 1;
  for (const auto& [p, v] : factorize(base)) {
    unsigned t = v * static_cast<unsigned>(e);
    for (std::uint64_t dd = d; dd % p == 0; dd /= p) ++t;
    if (t == 0) continue;  // no condition at this prime
    const mpz_class pt = pow_ui(p, t);
    const mpz_class kp = solve_quadratic_congruence(quad, lin, r, {p, t});
    // k == kp (mod pt), k == k (mod joined)
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), joined.get_mpz_t(), pt.get_mpz_t());
    k += joined * mod((kp - k) * inv, pt);
    joined *= pt;
  }
  return k;
}

std::vector<mpz_class> lifts(const ResidueClassSet& classes, const mpz_class& upper) {
  std::vector<mpz_class> out;
  for (const auto& r : classes.residues) {
    for (mpz_class x = r; x < upper; x += classes.modulus) {
      if (x != 0) out.push_back(x);
    }
  }
  return out;
}

struct ClassMemo {
  std::mutex mutex;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const ResidueClassSet>> sets;
};

ClassMemo& class_memo() {
  static ClassMemo memo;
  return memo;
}

std::shared_ptr<const ResidueClassSet> enumerate_shared(std::uint64_t n, std::uint64_t base,
                                                        const EnumerationLimits& limits) {
  const mpz_class expected = count_A(n, base);
  if (expected > ui(limits.max_classes)) {
    throw ResourceLimitError("A(" + std::to_string(n) + "," + std::to_string(base) + ") = " +
                             expected.get_str() + " classes exceeds the cap of " +
                             std::to_string(limits.max_classes));
  }
  auto& memo = class_memo();
  {
    std::lock_guard lock(memo.mutex);
    if (auto it = memo.sets.find({n, base}); it != memo.sets.end()) return it->second;
  }

  ResidueClassSet out;
  if (n == 1) {
    out = base_classes(base);
  } else {
    out.base = base;
    out.level = n;
    out.modulus = pow_ui(base, n + 1);
    out.residues.reserve(expected.get_ui());
    const mpz_class mn1 = pow_ui(base, n - 1);
    std::vector<std::uint64_t> units;
    for (std::uint64_t c = 1; c < base; ++c) {
      if (std::gcd(c, base) == 1) units.push_back(c);
    }
    for (const std::uint64_t d : divisors(base)) {
      if (d == 1) continue;
      const auto targets = lifts(*enumerate_shared(n - 1, d, limits), mn1 * ui(d));
      for (const auto& r : targets) {
        for (const std::uint64_t c : units) out.residues.push_back(invert_phi({r, d, c, base, n}));
      }
    }
    std::sort(out.residues.begin(), out.residues.end());
  }

  auto shared = std::make_shared<const ResidueClassSet>(std::move(out));
  std::lock_guard lock(memo.mutex);
  return memo.sets.emplace(std::make_pair(n, base), std::move(shared)).first->second;
}

}  // namespace

bool ResidueClassSet::contains(const mpz_class& a) const {
  const mpz_class r = mod(a, modulus);
  return std::binary_search(residues.begin(), residues.end(), r);
}

ResidueClassSet base_classes(std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("base_classes: M must be >= 2");
  ResidueClassSet out{base, 1, pow_ui(base, 2), {}};
  for (std::uint64_t r = base - 1; r >= 1; --r) {
    if (std::gcd(r, base) == 1) out.residues.push_back(out.modulus - ui(r));
  }
  return out;
}

mpz_class solve_quadratic_congruence(const mpz_class& a, const mpz_class& b, const mpz_class& r,
                                     PrimePower modulus) {
  const std::uint64_t p = modulus.prime;
  if (!is_prime(p) || modulus.exponent == 0) throw std::invalid_argument("quadratic congruence: bad modulus");
  if (!mpz_divisible_ui_p(a.get_mpz_t(), p)) {
    throw std::invalid_argument("quadratic congruence: leading coefficient must vanish mod p");
  }
  if (mpz_divisible_ui_p(b.get_mpz_t(), p)) {
    throw std::invalid_argument("quadratic congruence: linear coefficient must be a unit mod p");
  }
  const mpz_class pp = ui(p);
  // f'(k) = 2ak + b == b (mod p) for every k.
  mpz_class inv_b;
  mpz_invert(inv_b.get_mpz_t(), mpz_class(mod(b, pp)).get_mpz_t(), pp.get_mpz_t());

  mpz_class k = mod(r * inv_b, pp);
  mpz_class pj = pp;
  for (unsigned j = 1; j < modulus.exponent; ++j) {
    // f(k) == 0 (mod p^j); choose digit t with f(k + t p^j) == 0 (mod p^{j+1}).
    const mpz_class f = a * k * k + b * k - r;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), f.get_mpz_t(), pj.get_mpz_t());
    const mpz_class t = mod(-q * inv_b, pp);
    k += t * pj;
    pj *= p;
  }
  return k;
}

mpz_class invert_phi(const PreimageQuery& q) {
  const std::uint64_t m = q.base;
  if (m < 2 || q.d < 2 || m % q.d != 0) throw std::invalid_argument("invert_phi: need 1 < d | M");
  if (q.level < 1) throw std::invalid_argument("invert_phi: level must be >= 1");
  if (q.c < 1 || q.c >= m || std::gcd(q.c, m) != 1) {
    throw std::invalid_argument("invert_phi: c must be a unit in [1, M)");
  }
  const mpz_class upper = pow_ui(m, q.level - 1) * ui(q.d);
  if (q.r < 1 || q.r >= upper) throw std::invalid_argument("invert_phi: r out of range");
  if (mpz_gcd_ui(nullptr, q.r.get_mpz_t(), q.d) != 1) {
    throw std::invalid_argument("invert_phi: r must be coprime to d");
  }

  const mpz_class k = solve_phi_congruence(m, q.d, q.c, q.r, q.level - 1);
  // gcd(r, d) = 1 rules out k == 0.
  return ui(m) * (k * ui(m / q.d) - 1) + ui(q.c);
}

ResidueClassSet enumerate_classes(std::uint64_t n, std::uint64_t base, EnumerationLimits limits) {
  if (n < 1) throw std::invalid_argument("enumerate_classes: n must be >= 1");
  if (base < 2) throw std::invalid_argument("enumerate_classes: M must be >= 2");
  return *enumerate_shared(n, base, limits);
}

ExactRational chain_witness(std::span<const std::uint64_t> chain) {
  if (chain.empty() || chain.front() < 2) throw std::invalid_argument("chain_witness: q0 must be >= 2");
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    if (chain[j + 1] == 0 || chain[j] % chain[j + 1] != 0) {
      throw std::invalid_argument("chain_witness: each denominator must divide the previous one");
    }
  }
  // Work backwards from the deepest denominator. The numerator of the level
  // j+1 fraction only matters modulo q_j^{L} q_{j+1}, L = remaining depth.
  const std::size_t last = chain.size() - 1;
  mpz_class numer = chain[last] == 1 ? 0 : 1;
  for (std::size_t j = last; j-- > 0;) {
    const std::uint64_t m = chain[j];
    const std::uint64_t d = chain[j + 1];
    if (m == 1) {
      numer = 0;
    } else if (d == 1) {
      numer = ui(m) * ui(m) - 1;  // order one
    } else {
      const std::uint64_t depth = last - j - 1;
      const mpz_class target_mod = pow_ui(m, depth) * ui(d);
      numer = invert_phi({mod(numer, target_mod), d, 1, m, depth + 1});
    }
  }
  return ExactRational(numer, ui(chain.front()));
}

std::vector<CoveringLevel> covering_gap_demo(unsigned n_max) {
  if (n_max > 30) throw std::invalid_argument("covering_gap_demo: n_max too large");
  std::vector<CoveringLevel> out;
  std::vector<std::unordered_set<std::uint64_t>> chosen;
  std::uint64_t modulus = 1;
  for (unsigned n = 0; n <= n_max; ++n) {
    modulus *= 3;
    // Every 1 + 3^m with 3^m >= modulus is congruent to 1.
    std::unordered_set<std::uint64_t> forbidden{1 % modulus};
    for (std::uint64_t pm = 1; pm < modulus; pm *= 3) forbidden.insert((1 + pm) % modulus);

    CoveringLevel level{n, modulus, {}};
    const std::uint64_t want = std::uint64_t{1} << n;
    for (std::uint64_t x = 1; x <= modulus && level.residues.size() < want; ++x) {
      if (forbidden.contains(x % modulus)) continue;
      bool clash = false;
      std::uint64_t coarse = 1;
      for (unsigned i = 0; i < n && !clash; ++i) {
        coarse *= 3;
        clash = chosen[i].contains(x % coarse);
      }
      if (!clash) level.residues.push_back(x);
    }
    if (level.residues.size() != want) throw std::logic_error("covering_gap_demo: ran out of residues");
    std::unordered_set<std::uint64_t> mine;
    for (const auto x : level.residues) mine.insert(x % modulus);
    chosen.push_back(std::move(mine));
    out.push_back(std::move(level));
  }
  return out;
}

}  // namespace quasiq
