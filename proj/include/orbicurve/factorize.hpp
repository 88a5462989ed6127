#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "squarefree.hpp"

namespace orbicurve {

// Factorization over Q: deterministic Zassenhaus. Square-free parts are
// factored modulo a small prime (Berlekamp), lifted with quadratic Hensel
// steps past the Mignotte bound, and recombined by subset search. Factor
// degree sets modulo several primes are intersected first, which certifies
// most irreducible inputs without any lifting.
namespace factor_detail {

inline bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline long long next_prime(long long n) {
  do {
    ++n;
  } while (!is_prime_ll(n));
  return n;
}

// Prime field with a process-wide modulus; factorization is single-threaded
// and sets P before any arithmetic.
struct Fp {
  static inline long long P = 3;
  long long v = 0;

  Fp() = default;
  Fp(long long x) : v(x % P) {
    if (v < 0) v += P;
  }
  static Fp raw(long long x) {
    Fp f;
    f.v = x;
    return f;
  }

  friend Fp operator+(Fp a, Fp b) {
    long long s = a.v + b.v;
    if (s >= P) s -= P;
    return raw(s);
  }
  friend Fp operator-(Fp a, Fp b) {
    long long s = a.v - b.v;
    if (s < 0) s += P;
    return raw(s);
  }
  Fp operator-() const { return v == 0 ? raw(0) : raw(P - v); }
  friend Fp operator*(Fp a, Fp b) {
    return raw(static_cast<long long>(static_cast<__int128>(a.v) * b.v % P));
  }
  Fp inv() const {
    Fp r(1), b = *this;
    long long e = P - 2;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

using FpPoly = Poly<Fp>;

inline Fp to_fp(const Int& x) {
  Int r = x % Fp::P;
  long long v = r.convert_to<long long>();
  return Fp(v);
}

inline FpPoly to_fp_poly(const IPoly& p) {
  std::vector<Fp> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(to_fp(x));
  return FpPoly::from_coeffs(std::move(c));
}

inline IPoly from_fp_poly(const FpPoly& p) {
  std::vector<Int> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(x.v);
  return IPoly::from_coeffs(std::move(c));
}

inline FpPoly powmod(FpPoly base, Int e, const FpPoly& mod) {
  FpPoly r{Fp(1)};
  base = divmod(base, mod).second;
  while (e != 0) {
    if ((e & 1) != 0) r = divmod(r * base, mod).second;
    e >>= 1;
    if (e != 0) base = divmod(base * base, mod).second;
  }
  return r;
}

// Bezout pair with s*a + t*b = 1 and deg s < deg b, deg t < deg a.
// pre: gcd(a, b) = 1, both nonconstant.
inline std::pair<FpPoly, FpPoly> bezout(const FpPoly& a, const FpPoly& b) {
  FpPoly r0 = a, r1 = b;
  FpPoly s0{Fp(1)}, s1, t0, t1{Fp(1)};
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1;
    r1 = r;
    FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  // r0 = g = s0 a + t0 b, constant by the coprimality precondition.
  Fp gi = r0.lc().inv();
  FpPoly s = s0 * gi, t = t0 * gi;
  auto q = divmod(s, b).first;
  s = s - q * b;
  t = t + q * a;
  return {s, t};
}

// Degrees of the irreducible factors mod P (with multiplicity of count, not
// of exponent; pre: f monic square-free mod P).
inline std::vector<int> distinct_degree_profile(const FpPoly& f) {
  std::vector<int> degs;
  FpPoly rem = f;
  FpPoly x = FpPoly::var();
  FpPoly xq = x;
  for (int d = 1; rem.degree() >= 2 * d; ++d) {
    xq = powmod(xq, Int(Fp::P), f);
    FpPoly g = gcd_field(rem, divmod(xq - x, rem).second);
    if (g.degree() > 0) {
      for (int i = 0; i < g.degree() / d; ++i) degs.push_back(d);
      rem = exact_div(rem, g);
    }
  }
  if (rem.degree() > 0) degs.push_back(rem.degree());
  return degs;
}

// Berlekamp nullspace basis of v -> v^P - v on Fp[z]/f; pre: f monic
// square-free. Basis size equals the number of irreducible factors.
inline std::vector<FpPoly> berlekamp_basis(const FpPoly& f) {
  int n = f.degree();
  FpPoly zp = powmod(FpPoly::var(), Int(Fp::P), f);
  // Column j holds z^(jP) mod f.
  std::vector<std::vector<Fp>> m(static_cast<size_t>(n), std::vector<Fp>(static_cast<size_t>(n)));
  FpPoly col{Fp(1)};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[i];
    m[static_cast<size_t>(j)][static_cast<size_t>(j)] -= Fp(1);
    if (j + 1 < n) col = divmod(col * zp, f).second;
  }
  // Row-reduce and read the nullspace.
  std::vector<int> pivot_col(static_cast<size_t>(n), -1);
  int row = 0;
  for (int c = 0; c < n && row < n; ++c) {
    int pr = -1;
    for (int r = row; r < n; ++r) {
      if (m[static_cast<size_t>(r)][static_cast<size_t>(c)] != Fp(0)) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(m[static_cast<size_t>(pr)], m[static_cast<size_t>(row)]);
    Fp inv = m[static_cast<size_t>(row)][static_cast<size_t>(c)].inv();
    for (int cc = c; cc < n; ++cc) m[static_cast<size_t>(row)][static_cast<size_t>(cc)] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row) continue;
      Fp a = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (a == Fp(0)) continue;
      for (int cc = c; cc < n; ++cc)
        m[static_cast<size_t>(r)][static_cast<size_t>(cc)] -= a * m[static_cast<size_t>(row)][static_cast<size_t>(cc)];
    }
    pivot_col[static_cast<size_t>(row)] = c;
    ++row;
  }
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int r = 0; r < row; ++r) is_pivot[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = true;
  std::vector<FpPoly> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[static_cast<size_t>(c)]) continue;
    std::vector<Fp> v(static_cast<size_t>(n));
    v[static_cast<size_t>(c)] = Fp(1);
    for (int r = 0; r < row; ++r)
      v[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = -m[static_cast<size_t>(r)][static_cast<size_t>(c)];
    basis.push_back(FpPoly::from_coeffs(std::move(v)));
  }
  return basis;
}

inline std::vector<FpPoly> berlekamp_split(const FpPoly& f) {
  std::vector<FpPoly> basis = berlekamp_basis(f);
  size_t r = basis.size();
  std::vector<FpPoly> factors{monic(f)};
  for (const FpPoly& v : basis) {
    if (factors.size() == r) break;
    if (v.degree() <= 0) continue;
    std::vector<FpPoly> next;
    for (const FpPoly& u : factors) {
      if (u.degree() <= 1) {
        next.push_back(u);
        continue;
      }
      std::vector<FpPoly> pieces{u};
      for (long long s = 0; s < Fp::P; ++s) {
        std::vector<FpPoly> finer;
        for (const FpPoly& w : pieces) {
          if (w.degree() <= 1) {
            finer.push_back(w);
            continue;
          }
          FpPoly g = gcd_field(w, v - FpPoly(Fp(s)));
          if (g.degree() > 0 && g.degree() < w.degree()) {
            finer.push_back(g);
            finer.push_back(exact_div(w, g));
          } else {
            finer.push_back(w);
          }
        }
        pieces = std::move(finer);
      }
      next.insert(next.end(), pieces.begin(), pieces.end());
    }
    factors = std::move(next);
  }
  if (factors.size() != r) throw NumericError("factorize: incomplete Berlekamp split");
  return factors;
}

inline IPoly reduce_mod(const IPoly& a, const Int& m) {
  std::vector<Int> c;
  c.reserve(a.coeffs().size());
  for (const auto& x : a.coeffs()) {
    Int v = x % m;
    if (v < 0) v += m;
    c.push_back(v);
  }
  return IPoly::from_coeffs(std::move(c));
}

inline IPoly sym_mod(const IPoly& a, const Int& m) {
  std::vector<Int> c;
  c.reserve(a.coeffs().size());
  for (const auto& x : a.coeffs()) {
    Int v = x % m;
    if (v < 0) v += m;
    if (2 * v > m) v -= m;
    c.push_back(v);
  }
  return IPoly::from_coeffs(std::move(c));
}

inline Int sym_mod_int(Int v, const Int& m) {
  v %= m;
  if (v < 0) v += m;
  if (2 * v > m) v -= m;
  return v;
}

// Division by a monic polynomial in Z/m.
inline std::pair<IPoly, IPoly> divmod_monic_mod(const IPoly& a, const IPoly& b, const Int& m) {
  std::vector<Int> rem(a.coeffs().begin(), a.coeffs().end());
  int db = b.degree();
  int da = static_cast<int>(rem.size()) - 1;
  if (da < db) return {IPoly(), reduce_mod(a, m)};
  std::vector<Int> quo(static_cast<size_t>(da - db) + 1, Int(0));
  for (int i = da; i >= db; --i) {
    Int c = rem[static_cast<size_t>(i)] % m;
    if (c < 0) c += m;
    quo[static_cast<size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      Int& t = rem[static_cast<size_t>(i - db + j)];
      t = (t - c * b[j]) % m;
    }
  }
  return {reduce_mod(IPoly::from_coeffs(std::move(quo)), m),
          reduce_mod(IPoly::from_coeffs(std::move(rem)), m)};
}

inline Int inv_mod(const Int& a, const Int& m) {
  Int old_r = a % m, r = m;
  if (old_r < 0) old_r += m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw NumericError("factorize: non-invertible leading coefficient");
  old_s %= m;
  if (old_s < 0) old_s += m;
  return old_s;
}

// One quadratic Hensel chain: lifts F = A*B from mod p to mod target, where
// B is monic, A carries lc(F), and s*A + t*B = 1 mod p.
inline std::pair<IPoly, IPoly> hensel_pair(const IPoly& F, IPoly A, IPoly B, IPoly s, IPoly t,
                                           long long p, const Int& target) {
  Int m = p;
  while (m < target) {
    Int m2 = m * m;
    IPoly e = reduce_mod(F - A * B, m2);
    auto [q, r] = divmod_monic_mod(s * e, B, m2);
    IPoly A1 = reduce_mod(A + t * e + q * A, m2);
    IPoly B1 = reduce_mod(B + r, m2);
    IPoly b = reduce_mod(s * A1 + t * B1 - IPoly(Int(1)), m2);
    auto [c, d] = divmod_monic_mod(s * b, B1, m2);
    s = reduce_mod(s - d, m2);
    t = reduce_mod(t - t * b - c * A1, m2);
    A = std::move(A1);
    B = std::move(B1);
    m = m2;
  }
  return {A, B};
}

inline IPoly monicize_mod(const IPoly& f, const Int& m) {
  Int inv = inv_mod(f.lc(), m);
  std::vector<Int> c;
  c.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) c.push_back(x * inv % m);
  return reduce_mod(IPoly::from_coeffs(std::move(c)), m);
}

// Lifts the mod-p split parts[lo..hi) of F to monic factors mod target.
inline void lift_tree(const IPoly& F, const std::vector<FpPoly>& parts, size_t lo, size_t hi,
                      long long p, const Int& target, std::vector<IPoly>& out) {
  if (hi - lo == 1) {
    out.push_back(monicize_mod(F, target));
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  FpPoly a{to_fp(F.lc())};
  for (size_t i = lo; i < mid; ++i) a = a * parts[i];
  FpPoly b{Fp(1)};
  for (size_t i = mid; i < hi; ++i) b = b * parts[i];
  auto [s, t] = bezout(a, b);
  auto [A, B] = hensel_pair(F, from_fp_poly(a), from_fp_poly(b), from_fp_poly(s), from_fp_poly(t),
                            p, target);
  lift_tree(A, parts, lo, mid, p, target, out);
  lift_tree(B, parts, mid, hi, p, target, out);
}

struct ModularImage {
  long long p;
  std::vector<int> degree_profile;
};

// Subset sums achievable from a degree profile, as a 0/1 table over 0..n.
inline std::vector<char> subset_sums(const std::vector<int>& degs, int n) {
  std::vector<char> dp(static_cast<size_t>(n) + 1, 0);
  dp[0] = 1;
  for (int d : degs) {
    for (int i = n; i >= d; --i) {
      if (dp[static_cast<size_t>(i - d)]) dp[static_cast<size_t>(i)] = 1;
    }
  }
  return dp;
}

// Zassenhaus recombination. F primitive square-free over Z; lifted are monic
// mod `target` with F = lc(F) * prod lifted (mod target). allowed_deg marks
// degrees any true factor must have.
inline std::vector<IPoly> recombine(IPoly F, std::vector<IPoly> lifted, const Int& target,
                                    std::vector<char> allowed_deg) {
  std::vector<IPoly> out;
  std::vector<Int> val0, val1;
  for (const auto& g : lifted) {
    val0.push_back(g.eval(Int(0)) % target);
    val1.push_back(g.eval(Int(1)) % target);
  }
  size_t size = 1;
  while (2 * size <= lifted.size()) {
    bool found = false;
    std::vector<size_t> idx(size);
    for (size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      int dsum = 0;
      for (size_t i : idx) dsum += lifted[i].degree();
      bool plausible = dsum <= F.degree() && allowed_deg[static_cast<size_t>(dsum)];
      if (plausible) {
        // Cheap pretests: the candidate evaluated at 0 and 1 must divide
        // lc(F) * F there.
        Int c0 = F.lc(), c1 = F.lc();
        for (size_t i : idx) {
          c0 = c0 * val0[i] % target;
          c1 = c1 * val1[i] % target;
        }
        c0 = sym_mod_int(c0, target);
        c1 = sym_mod_int(c1, target);
        Int t0 = F.lc() * F.eval(Int(0)), t1 = F.lc() * F.eval(Int(1));
        bool ok0 = c0 == 0 ? t0 == 0 : t0 % c0 == 0;
        bool ok1 = c1 == 0 ? t1 == 0 : t1 % c1 == 0;
        if (ok0 && ok1) {
          IPoly cand{F.lc()};
          for (size_t i : idx) cand = reduce_mod(cand * lifted[i], target);
          cand = primitive_part(sym_mod(cand, target));
          if (!cand.is_zero() && cand.degree() >= 1) {
            auto [q, r] = divmod(to_rational(F), to_rational(cand));
            if (r.is_zero()) {
              out.push_back(cand);
              F = to_integer(q).first;
              std::vector<IPoly> keep;
              std::vector<Int> k0, k1;
              for (size_t i = 0; i < lifted.size(); ++i) {
                if (std::find(idx.begin(), idx.end(), i) == idx.end()) {
                  keep.push_back(lifted[i]);
                  k0.push_back(val0[i]);
                  k1.push_back(val1[i]);
                }
              }
              lifted = std::move(keep);
              val0 = std::move(k0);
              val1 = std::move(k1);
              found = true;
              break;
            }
          }
        }
      }
      // Next size-combination of indices.
      size_t i = size;
      while (i > 0 && idx[i - 1] == lifted.size() - (size - i) - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (F.degree() >= 1) out.push_back(F);
  return out;
}

// Square-free primitive integer polynomial of degree >= 1 -> monic rational
// irreducible factors.
inline std::vector<Polynomial> factor_squarefree_int(const IPoly& F) {
  if (F.degree() == 1) return {monic(to_rational(F))};
  if (F.degree() == 2) {
    // Discriminant route.
    Int a = F[2], b = F[1], c = F[0];
    Int disc = b * b - 4 * a * c;
    if (disc >= 0) {
      Int s = sqrt(disc);
      if (s * s == disc) {
        Rational r1 = make_rat(-b + s, 2 * a), r2 = make_rat(-b - s, 2 * a);
        return {Polynomial::var() - Polynomial(r1), Polynomial::var() - Polynomial(r2)};
      }
    }
    return {monic(to_rational(F))};
  }

  int n = F.degree();
  // Scan small odd primes where F stays square-free; intersect factor-degree
  // subset sums, and keep the prime with the fewest modular factors.
  std::vector<char> allowed(static_cast<size_t>(n) + 1, 1);
  long long best_p = 0;
  size_t best_r = static_cast<size_t>(n) + 1;
  long long p = 2;
  int seen = 0;
  while (seen < 4) {
    p = next_prime(p);
    if (p > 20000) throw NumericError("factorize: no usable prime found");
    if (F.lc() % p == 0) continue;
    Fp::P = p;
    FpPoly fp = monic(to_fp_poly(F));
    if (fp.degree() != n) continue;
    if (gcd_field(fp, fp.derivative()).degree() != 0) continue;
    ++seen;
    std::vector<int> profile = distinct_degree_profile(fp);
    std::vector<char> sums = subset_sums(profile, n);
    for (size_t i = 0; i <= static_cast<size_t>(n); ++i) allowed[i] &= sums[i];
    if (profile.size() == 1) return {monic(to_rational(F))};
    if (profile.size() < best_r) {
      best_r = profile.size();
      best_p = p;
    }
  }
  bool only_trivial = true;
  for (int i = 1; i < n; ++i) only_trivial &= !allowed[static_cast<size_t>(i)];
  if (only_trivial) return {monic(to_rational(F))};

  Fp::P = best_p;
  FpPoly fp = monic(to_fp_poly(F));
  std::vector<FpPoly> parts = berlekamp_split(fp);
  std::sort(parts.begin(), parts.end(),
            [](const FpPoly& a, const FpPoly& b) { return a.degree() < b.degree(); });

  // Mignotte-style bound: |coeff of lc(F) * (any factor)| <= 2^n ||F||_2 |lc|.
  Int norm2 = 0;
  for (const auto& c : F.coeffs()) norm2 += c * c;
  Int bound = (sqrt(norm2) + 1) * (Int(1) << static_cast<unsigned>(n));
  Int lcF = F.lc();
  bound *= lcF < 0 ? -lcF : lcF;
  Int target = best_p;
  while (target <= 2 * bound) target *= target;

  std::vector<IPoly> lifted;
  lift_tree(reduce_mod(F, target), parts, 0, parts.size(), best_p, target, lifted);
  std::vector<IPoly> irr = recombine(F, std::move(lifted), target, std::move(allowed));
  std::vector<Polynomial> out;
  out.reserve(irr.size());
  for (const auto& g : irr) out.push_back(monic(to_rational(g)));
  return out;
}

}  // namespace factor_detail

struct Factorization {
  Rational lead;
  // Monic irreducible factors with multiplicities, sorted by degree then
  // coefficient order; the product times lead reassembles the input.
  std::vector<std::pair<Polynomial, int>> factors;
};

inline std::vector<Polynomial> factor_squarefree(const Polynomial& g) {
  if (g.degree() < 1) return {};
  auto [F, scale] = to_integer(g);
  (void)scale;
  std::vector<Polynomial> out = factor_detail::factor_squarefree_int(F);
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    return a < b;
  });
  return out;
}

inline Factorization factorize(const Polynomial& p) {
  if (p.is_zero()) throw InputError("factorize: zero polynomial");
  Factorization r;
  r.lead = p.lc();
  for (const auto& [g, e] : squarefree_decompose(p)) {
    for (const auto& h : factor_squarefree(g)) r.factors.emplace_back(h, e);
  }
  std::sort(r.factors.begin(), r.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

inline bool is_irreducible(const Polynomial& p) {
  if (p.degree() < 1) return false;
  Factorization f = factorize(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace orbicurve
