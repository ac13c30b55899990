#pragma once

// Brute-force checks at small coordinate bounds: enumeration of primitive isotropic classes,
// canonical reduction by certified monodromy moves, and the verification suites.

#include "kummer/arith.hpp"
#include "kummer/eichler.hpp"
#include "kummer/invariant.hpp"
#include "kummer/isometry.hpp"
#include "kummer/lattice.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace kummer {

struct EnumerationConfig {
  int n = 0;
  int bound = 0;
  std::optional<int> d_filter;
};

using Coords7 = std::array<std::int64_t, 7>;

/// Worker threads for scans; KUMMER_THREADS caps the hardware count.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KUMMER_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

namespace detail {

inline std::int64_t isqrt(std::int64_t x) {
  if (x <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

inline bool leading_positive(const Coords7& a) {
  for (auto x : a)
    if (x != 0) return x > 0;
  return false;
}

/// Scans the primitive isotropic vectors of Λ_n with coordinates in [-B, B], one per ±pair.
/// Work is split by the first coordinate; `visit(worker, coords, divisibility)` is called concurrently.
class IsotropicScan {
 public:
  explicit IsotropicScan(const EnumerationConfig& cfg) : cfg_(cfg) {
    if (cfg.n < 1) throw DomainError("n must be at least 1");
    if (cfg.bound < 0) throw DomainError("bound must be nonnegative");
    if (cfg.d_filter && *cfg.d_filter < 1) throw DomainError("divisibility filter must be positive");
    if (static_cast<long double>(cfg.n + 1) * cfg.bound * cfg.bound > 1e15L) throw DomainError("bound too large");
    const std::int64_t b = cfg.bound;
    step_ = cfg.d_filter ? *cfg.d_filter : 1;
    for (std::int64_t v = -(b / step_) * step_; v <= b; v += step_) values_.push_back(v);
    divisors_.resize(static_cast<std::size_t>(b * b + 1));
    for (std::int64_t t = 1; t <= b; ++t)
      for (std::int64_t r = t; r <= b * b; r += t) divisors_[static_cast<std::size_t>(r)].push_back(t);
  }

  template <class Visit>
  void run(unsigned threads, Visit&& visit) const {
    std::vector<std::int64_t> firsts;
    for (auto v : values_)
      if (v >= 0) firsts.push_back(v);
    std::atomic<std::size_t> next{0};
    auto work = [&](unsigned worker) {
      for (std::size_t i; (i = next.fetch_add(1)) < firsts.size();) scan_first(firsts[i], worker, visit);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(firsts.size())));
    if (threads == 1) {
      work(0);
      return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

 private:
  bool on_grid(std::int64_t x) const { return x >= -cfg_.bound && x <= cfg_.bound && x % step_ == 0; }

  template <class Visit>
  void scan_first(std::int64_t a1, unsigned worker, Visit& visit) const {
    const std::int64_t bb = std::int64_t(cfg_.bound) * cfg_.bound, n1 = cfg_.n + 1;
    for (auto b1 : values_) {
      if (a1 == 0 && b1 < 0) continue;
      for (auto a2 : values_) {
        if (a1 == 0 && b1 == 0 && a2 < 0) continue;
        for (auto b2 : values_) {
          if (a1 == 0 && b1 == 0 && a2 == 0 && b2 < 0) continue;
          const std::int64_t p = a1 * b1 + a2 * b2;
          if (p + bb < 0) continue;
          const std::int64_t cmax = std::min<std::int64_t>(cfg_.bound, isqrt((p + bb) / n1));
          std::int64_t cmin = 0;
          if (p - bb > 0) {
            cmin = isqrt((p - bb) / n1);
            while (n1 * cmin * cmin < p - bb) ++cmin;
          }
          for (std::int64_t cabs = cmin; cabs <= cmax; ++cabs) {
            const std::int64_t r = n1 * cabs * cabs - p;
            for (int sgn : {1, -1}) {
              if (cabs == 0 && sgn < 0) continue;
              const std::int64_t c = sgn * cabs;
              auto emit = [&](std::int64_t a3, std::int64_t b3) {
                const Coords7 x{a1, b1, a2, b2, a3, b3, c};
                if (!leading_positive(x)) return;
                std::int64_t gu = std::gcd(std::gcd(std::gcd(a1, b1), std::gcd(a2, b2)), std::gcd(a3, b3));
                if (std::gcd(gu, c) != 1) return;
                const std::int64_t div = std::gcd(gu, 2 * n1 * cabs);
                if (cfg_.d_filter && div != *cfg_.d_filter) return;
                visit(worker, x, div);
              };
              if (r == 0) {
                for (auto b3 : values_) emit(0, b3);
                for (auto a3 : values_)
                  if (a3 != 0) emit(a3, 0);
              } else if (std::abs(r) <= bb) {
                for (auto t : divisors_[static_cast<std::size_t>(std::abs(r))]) {
                  if (t % step_ != 0) continue;
                  for (std::int64_t a3 : {t, -t}) {
                    const std::int64_t b3 = r / a3;
                    if (on_grid(b3)) emit(a3, b3);
                  }
                }
              }
            }
          }
        }
      }
    }
  }

  EnumerationConfig cfg_;
  std::int64_t step_ = 1;
  std::vector<std::int64_t> values_;
  std::vector<std::vector<std::int64_t>> divisors_;
};

}  // namespace detail

/// Sorted coordinates of the primitive isotropic classes selected by cfg.
inline std::vector<Coords7> enumerate_isotropic_coords(const EnumerationConfig& cfg, unsigned threads = worker_count()) {
  detail::IsotropicScan scan(cfg);
  std::vector<std::vector<Coords7>> parts(std::max(1u, threads));
  scan.run(threads, [&](unsigned w, const Coords7& x, std::int64_t) { parts[w].push_back(x); });
  std::vector<Coords7> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline LatticeVector to_vector(const LatticePtr& lambda, const Coords7& x) {
  return {lambda, std::vector<Integer>(x.begin(), x.end())};
}

inline std::vector<LatticeVector> enumerate_isotropic(const EnumerationConfig& cfg, unsigned threads = worker_count()) {
  LatticePtr lambda = kummer_lattice(cfg.n);
  std::vector<LatticeVector> out;
  for (const auto& x : enumerate_isotropic_coords(cfg, threads)) out.push_back(to_vector(lambda, x));
  return out;
}

/// Counts by divisibility and by normalized class, without materializing the vectors.
struct Census {
  std::int64_t total = 0;
  std::map<int, std::int64_t> by_divisibility;
  std::map<std::pair<int, int>, std::int64_t> by_class;  // (d, b)
};

inline Census isotropic_census(const EnumerationConfig& cfg, unsigned threads = worker_count()) {
  detail::IsotropicScan scan(cfg);
  std::vector<Census> parts(std::max(1u, threads));
  scan.run(threads, [&](unsigned w, const Coords7& x, std::int64_t div) {
    Census& c = parts[w];
    ++c.total;
    ++c.by_divisibility[static_cast<int>(div)];
    std::int64_t r = ((x[6] % div) + div) % div;
    ++c.by_class[{static_cast<int>(div), static_cast<int>(std::min(r, div - r) % div)}];
  });
  Census out;
  for (const auto& p : parts) {
    out.total += p.total;
    for (const auto& [k, v] : p.by_divisibility) out.by_divisibility[k] += v;
    for (const auto& [k, v] : p.by_class) out.by_class[k] += v;
  }
  return out;
}

/// max(5, largest coordinate of the class witnesses d(e1 + m f1) + bδ).
inline int default_bound(int n) {
  int bound = 5;
  for (int d : admissible_divisibilities(n))
    for (const auto& cls : sigma_classes(n, d)) {
      bound = std::max(bound, d);
      bound = std::max(bound, (n + 1) * cls.b * cls.b / d);
    }
  return bound;
}

// --- moves -----------------------------------------------------------------

inline Integer bilinear(const std::vector<Integer>& x, const std::vector<Integer>& y, const IntMatrix& gram) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0 && gram(i, j) != 0) s += x[i] * gram(i, j) * y[j];
  }
  return s;
}

/// One monodromy move: an Eichler transvection or a product ρ_u ∘ ρ_w of two roots.
class Move {
 public:
  static Move transvection(TransvectionStep s) {
    Move m;
    m.step_ = std::move(s);
    return m;
  }
  static Move rho_pair(std::vector<Integer> u, std::vector<Integer> w) {
    Move m;
    m.u_ = std::move(u);
    m.w_ = std::move(w);
    return m;
  }

  bool is_transvection() const { return step_.has_value(); }
  const std::optional<TransvectionStep>& step() const { return step_; }

  void apply(std::vector<Integer>& x, const IntMatrix& gram) const {
    if (step_) {
      step_->apply(x, gram);
      return;
    }
    apply_rho(w_, x, gram);
    apply_rho(u_, x, gram);
  }

  Isometry isometry(const LatticePtr& home) const {
    if (step_) return step_->isometry(home);
    return rho(LatticeVector(home, u_)) * rho(LatticeVector(home, w_));
  }

  std::string key() const {
    std::ostringstream os;
    auto put = [&](const std::vector<Integer>& v) {
      for (const auto& c : v) os << c << ',';
      os << ';';
    };
    if (step_) {
      os << "T" << step_->e_index << ':';
      put(step_->a);
    } else {
      os << "R:";
      put(u_);
      put(w_);
    }
    return os.str();
  }

  std::string describe() const {
    std::ostringstream os;
    auto put = [&](const std::vector<Integer>& v) {
      os << '[';
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
      os << ']';
    };
    if (step_) {
      os << "E(b" << step_->e_index << ", ";
      put(step_->a);
      os << ')';
    } else {
      os << "rho(";
      put(u_);
      os << ") rho(";
      put(w_);
      os << ')';
    }
    return os.str();
  }

 private:
  static void apply_rho(const std::vector<Integer>& u, std::vector<Integer>& x, const IntMatrix& gram) {
    const Integer uu = bilinear(u, u, gram);
    if (uu != 2 && uu != -2) throw DomainError("rho move needs a root of norm +-2");
    const Integer k = 2 * bilinear(u, x, gram) / uu;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= k * u[i];
    if (uu > 0)
      for (auto& c : x) c = -c;
  }

  std::optional<TransvectionStep> step_;
  std::vector<Integer> u_, w_;
};

/// Ordered moves; the first move is applied first.
struct MoveWord {
  std::vector<Move> moves;

  void apply(std::vector<Integer>& x, const IntMatrix& gram) const {
    for (const auto& m : moves) m.apply(x, gram);
  }

  Isometry composite(const LatticePtr& home) const {
    Isometry g = Isometry::identity(home);
    for (const auto& m : moves) g = m.isometry(home) * g;
    return g;
  }
};

/// Memoized mon2_contains over moves.
class MoveCertifier {
 public:
  explicit MoveCertifier(LatticePtr home) : home_(std::move(home)) {}

  bool certify(const Move& m) {
    const std::string k = m.key();
    {
      std::lock_guard lock(mu_);
      if (auto it = cache_.find(k); it != cache_.end()) return it->second;
    }
    bool ok = false;
    try {
      ok = mon2_contains(m.isometry(home_));
    } catch (const std::exception&) {
      ok = false;
    }
    std::lock_guard lock(mu_);
    cache_.emplace(k, ok);
    return ok;
  }

  std::size_t distinct() const {
    std::lock_guard lock(mu_);
    return cache_.size();
  }

 private:
  LatticePtr home_;
  mutable std::mutex mu_;
  std::map<std::string, bool> cache_;
};

// --- reduction -------------------------------------------------------------

struct EichlerReduction {
  LatticeVector canonical;
  MoveWord word;
};

/// Reduces α by monodromy moves to d(e1 + m f1) + b'δ with b' ∈ [0, d/2] and m = (n+1)b'²/d².
inline EichlerReduction eichler_reduce(const LatticeVector& alpha) {
  const int n = kummer_n_of(alpha);
  require_primitive_isotropic(alpha);
  const IntMatrix& gram = alpha.home()->gram();
  std::vector<Integer> x = alpha.coords();
  MoveWord word;
  auto absorb = [&](std::vector<TransvectionStep> steps) {
    for (auto& s : steps) word.moves.push_back(Move::transvection(std::move(s)));
  };
  absorb(reduce_hyperbolic_part(x, gram, 3));
  const Integer d = x[0];
  const Integer r = mod(x[kDelta], d);
  const bool flip = r > d - r;
  if (flip) {
    // ρ_{e2+f2} ∘ ρ_{e2−f2} is −1 off the second plane.
    std::vector<Integer> u(7), w(7);
    u[2] = u[3] = w[2] = 1;
    w[3] = -1;
    Move p = Move::rho_pair(std::move(u), std::move(w));
    p.apply(x, gram);
    word.moves.push_back(std::move(p));
    absorb(reduce_hyperbolic_part(x, gram, 3));
  }
  const Integer target = flip ? Integer(d - r) : r;
  const Integer diff = target - x[kDelta];
  if (diff % d != 0) throw std::logic_error("delta shift is not a multiple of d");
  if (const Integer k = diff / d; k != 0) {
    TransvectionStep s{1, std::vector<Integer>(7)};
    s.a[kDelta] = k;
    s.apply(x, gram);
    word.moves.push_back(Move::transvection(std::move(s)));
  }
  LatticeVector canonical = sigma_witness(alpha.home(), static_cast<int>(to_int64(d)), static_cast<int>(to_int64(target)));
  if (x != canonical.coords()) {
    std::ostringstream os;
    os << "eichler reduction failed for n=" << n << ": reached [";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << "] after " << word.moves.size() << " moves";
    throw std::logic_error(os.str());
  }
  return {std::move(canonical), std::move(word)};
}

/// An integral isometry g of a sum of hyperbolic planes with g(v1) = v2.
inline Isometry orbit_transporter(const LatticeVector& v1, const LatticeVector& v2) {
  LatticeVector::check_same(v1, v2);
  const LatticePtr& home = v1.home();
  if (home->rank() % 2 != 0 || home->rank() < 4 || home->gram() != hyperbolic_sum(home->rank() / 2)->gram())
    throw DomainError("orbit_transporter expects a sum of at least two hyperbolic planes");
  if (v1.is_zero() || v2.is_zero() || !is_primitive(v1) || !is_primitive(v2))
    throw DomainError("vectors must be primitive");
  if (norm(v1) != norm(v2)) throw DomainError("vectors must have equal norm");
  const IntMatrix& gram = home->gram();
  const std::size_t planes = home->rank() / 2;
  std::vector<Integer> x1 = v1.coords(), x2 = v2.coords();
  const auto s1 = reduce_hyperbolic_part(x1, gram, planes);
  const auto s2 = reduce_hyperbolic_part(x2, gram, planes);
  if (x1 != x2) throw std::logic_error("reductions reached different vectors");
  Isometry g1 = Isometry::identity(home), g2 = Isometry::identity(home);
  for (const auto& s : s1) g1 = s.isometry(home) * g1;
  for (const auto& s : s2) g2 = s.isometry(home) * g2;
  return g2.inverse() * g1;
}

// --- verification suites ---------------------------------------------------

struct Report {
  std::string suite;
  int n = 0;
  int bound = 0;
  std::int64_t classes_checked = 0;
  std::vector<std::string> failures;
  std::int64_t elapsed_ms = 0;
  std::map<std::string, std::int64_t> counts;

  bool vacuous() const { return classes_checked == 0; }
  bool passed() const { return failures.empty() && !vacuous(); }

  void fail(std::string what) {
    if (failures.size() < 200) failures.push_back(std::move(what));
    else ++counts["failures_truncated"];
  }
};

namespace detail {

inline std::string coords_str(const std::vector<Integer>& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + x[i].str();
  return s + "]";
}

class Stopwatch {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Runs body(index) over [0, count) on worker threads; body must be thread-safe.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Checks, for each enumerated class, the divisibility, H-lattice, base change, b and root statements.
inline Report verify_lemmas(const EnumerationConfig& cfg, unsigned threads = worker_count()) {
  detail::Stopwatch clock;
  Report rep{"lemmas", cfg.n, cfg.bound};
  const auto coords = enumerate_isotropic_coords(cfg, threads);
  const PrimEmbedding emb = canonical_embedding(cfg.n);
  const LatticePtr lambda = emb.source();
  std::mutex mu;
  detail::parallel_for(coords.size(), threads, [&](std::size_t i) {
    const LatticeVector alpha = to_vector(lambda, coords[i]);
    std::vector<std::string> bad;
    Integer d = 0;
    try {
      const Decomposition dec = decompose(alpha);
      d = dec.d;
      if ((cfg.n + 1) % (d * d) != 0) bad.push_back("d^2 does not divide n+1");
      const HLattice h = h_lattice(alpha, emb);
      if (h.gram != expected_h_gram(cfg.n, d, h.b)) bad.push_back("unexpected H Gram");
      if (!base_change_check(d, h.b, h.gram)) bad.push_back("base change fails");
      const LatticeVector diff = emb.apply(alpha) - h.b * emb.v();
      for (const auto& c : diff.coords())
        if (c % d != 0) {
          bad.push_back("(iota(alpha) - b v)/d not integral");
          break;
        }
      for (int sgn : {1, -1}) {
        const LatticeVector u = find_root(alpha, sgn);
        if (pair(u, alpha) != 0 || norm(u) != 2 * sgn) bad.push_back("root postcondition fails");
      }
    } catch (const std::exception& e) {
      bad.push_back(e.what());
    }
    std::lock_guard lock(mu);
    ++rep.classes_checked;
    ++rep.counts["d=" + d.str()];
    for (auto& b : bad) rep.fail(detail::coords_str(alpha.coords()) + ": " + b);
  });
  if (rep.vacuous()) rep.fail("no classes at bound " + std::to_string(cfg.bound));
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// Groups classes by invariant and checks that each group has one canonical reduction target,
/// reached by moves that each pass mon2_contains.
inline Report verify_faithful(const EnumerationConfig& cfg, unsigned threads = worker_count()) {
  detail::Stopwatch clock;
  Report rep{"faithful", cfg.n, cfg.bound};
  const auto coords = enumerate_isotropic_coords(cfg, threads);
  const PrimEmbedding emb = canonical_embedding(cfg.n);
  const LatticePtr lambda = emb.source();
  const IntMatrix& gram = lambda->gram();
  MoveCertifier certifier(lambda);
  std::mutex mu;
  std::map<InvariantClass, std::set<std::vector<Integer>>> targets;
  std::map<InvariantClass, std::int64_t> sizes;
  std::int64_t moves_applied = 0;
  detail::parallel_for(coords.size(), threads, [&](std::size_t i) {
    const LatticeVector alpha = to_vector(lambda, coords[i]);
    std::vector<std::string> bad;
    std::optional<InvariantClass> cls;
    std::vector<Integer> reached;
    std::size_t nmoves = 0;
    try {
      cls = theta(alpha, emb);
      const EichlerReduction red = eichler_reduce(alpha);
      reached = alpha.coords();
      for (const auto& m : red.word.moves) {
        if (!certifier.certify(m)) bad.push_back("move not in Mon2: " + m.describe());
        m.apply(reached, gram);
      }
      nmoves = red.word.moves.size();
      if (reached != red.canonical.coords()) bad.push_back("moves do not reach the canonical vector");
      if (reached != sigma_witness(lambda, cls->d, cls->b).coords())
        bad.push_back("canonical vector does not match invariant " + cls->str());
    } catch (const std::exception& e) {
      bad.push_back(e.what());
    }
    std::lock_guard lock(mu);
    ++rep.classes_checked;
    moves_applied += static_cast<std::int64_t>(nmoves);
    if (cls) {
      ++sizes[*cls];
      if (bad.empty()) targets[*cls].insert(reached);
    }
    for (auto& b : bad) rep.fail(detail::coords_str(alpha.coords()) + ": " + b);
  });
  std::map<std::vector<Integer>, InvariantClass> owner;
  for (const auto& [cls, set] : targets) {
    if (set.size() != 1) rep.fail("invariant " + cls.str() + " has " + std::to_string(set.size()) + " canonical targets");
    for (const auto& t : set) {
      auto [it, fresh] = owner.emplace(t, cls);
      if (!fresh) rep.fail("invariants " + it->second.str() + " and " + cls.str() + " share a canonical target");
    }
  }
  for (const auto& [cls, k] : sizes) rep.counts["class " + cls.str()] = k;
  rep.counts["moves_applied"] = moves_applied;
  rep.counts["distinct_moves_certified"] = static_cast<std::int64_t>(certifier.distinct());
  if (rep.vacuous()) rep.fail("no classes at bound " + std::to_string(cfg.bound));
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// Every class of Σ_{n,d} is hit by its explicit witness.
inline Report verify_surjective(int n, int d) {
  detail::Stopwatch clock;
  require_admissible(n, d);
  Report rep{"surjective", n, 0};
  const PrimEmbedding emb = canonical_embedding(n);
  for (const auto& cls : sigma_classes(n, d)) {
    ++rep.classes_checked;
    const LatticeVector alpha = sigma_witness(emb.source(), d, cls.b);
    rep.bound = std::max(rep.bound, static_cast<int>(to_int64(*std::max_element(alpha.coords().begin(), alpha.coords().end()))));
    try {
      const InvariantClass got = theta(alpha, emb);
      if (got != cls) rep.fail("witness " + detail::coords_str(alpha.coords()) + " gives " + got.str() + ", expected " + cls.str());
      else ++rep.counts["hit " + cls.str()];
      if (!eichler_reduce(alpha).word.moves.empty()) rep.fail("witness " + cls.str() + " is not canonical");
    } catch (const std::exception& e) {
      rep.fail(cls.str() + ": " + e.what());
    }
  }
  rep.elapsed_ms = clock.ms();
  return rep;
}

}  // namespace kummer
