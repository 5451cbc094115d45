// Release acceptance run.
//
// Eight self-contained criteria covering the exact engine (rational group
// ring arithmetic, class representatives, kernel verification) and the
// numerical cross-checker (windowed heat evolution). Each criterion prints
// one PASS/FAIL line plus indented measurements; the process exit status is
// the number of failed criteria, so the run doubles as a ctest entry.
//
// Criterion 7 compares finite-(t, radius) heat values against analytic
// targets. Its g = s leg converges too slowly to reach the target band at
// the pinned scale; the detail lines quantify the drift toward the target
// as (t, radius) grows. That leg is reported as the failure it is.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cayley/complex.hpp"
#include "cayley/errors.hpp"
#include "cayley/io.hpp"
#include "cayley/kclass.hpp"
#include "cayley/spectral.hpp"

using namespace cayley;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id = 0;
  std::string title;
  bool passed = true;
  std::vector<std::string> details;
  double seconds = 0.0;

  void fail(const std::string& line) {
    passed = false;
    details.push_back("FAIL " + line);
  }
  void note(const std::string& line) { details.push_back(line); }
};

std::string fmt(double x, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << x;
  return out.str();
}

GroupElement el(const GroupSpec& spec, const std::string& word) {
  return parse_element(spec, word);
}

RingElement words(const GroupSpec& spec,
                  const std::vector<std::pair<std::string, Rational>>& terms) {
  RingElement out = ring_zero(spec);
  for (const auto& [w, c] : terms)
    out = add(out, ring_delta(spec, el(spec, w), c));
  return out;
}

// ---------------------------------------------------------------------------
// 1. Identity values on free products: 1 - 1/m - 1/n, exactly.
// ---------------------------------------------------------------------------
void criterion_identity_table(Criterion& c) {
  int checked = 0;
  for (int m = 2; m <= 6; ++m)
    for (int n = 3; n <= 6; ++n) {
      const KClassExpr expr = kazhdan_class(make_free_product({m, n}), 1);
      const Rational expected = Rational(1) - Rational(1, m) - Rational(1, n);
      const Rational got = betti(expr, identity(expr.spec));
      if (got != expected)
        c.fail("Z" + std::to_string(m) + "*Z" + std::to_string(n) + ": got " +
               to_fraction_string(got) + ", expected " + to_fraction_string(expected));
      ++checked;
    }
  c.note(std::to_string(checked) + " products checked with exact rational equality");
}

// ---------------------------------------------------------------------------
// 2. The full delocalised table for Z2 * Z3.
// ---------------------------------------------------------------------------
void criterion_psl_table(Criterion& c) {
  const GroupSpec g = make_free_product({2, 3});
  const KClassExpr expr = kazhdan_class(g, 1);

  const std::vector<std::pair<std::string, Rational>> table = {
      {"e", Rational(1, 6)},
      {"s", Rational(-1, 2)},
      {"t", Rational(-1, 3)},
      {"tt", Rational(-1, 3)}};
  for (const auto& [word, expected] : table) {
    const Rational got = betti(expr, el(g, word));
    if (got != expected)
      c.fail("degree 1 at " + word + ": got " + to_fraction_string(got) +
             ", expected " + to_fraction_string(expected));
  }

  // Every class whose cyclically reduced form has syllable length >= 2
  // vanishes; tst ~ stt exercises the cyclic-reduction path.
  int zeros = 0;
  for (const std::string word : {"st", "ts", "stt", "tst", "stst", "tstts"}) {
    if (betti(expr, el(g, word)) != 0)
      c.fail("degree 1 at " + word + " should vanish");
    ++zeros;
  }

  // Away from degree 1 everything vanishes.
  for (int degree : {0, 2, 3})
    for (const std::string word : {"e", "s", "t", "st"}) {
      const KClassExpr other = kazhdan_class(g, degree);
      if (betti(other, el(g, word)) != 0)
        c.fail("degree " + std::to_string(degree) + " at " + word + " should vanish");
    }
  c.note("4 table values, " + std::to_string(zeros) +
         " long classes, degrees {0,2,3} checked exactly");
}

// ---------------------------------------------------------------------------
// 3. Products of free and finite factors: pairings equal 1/|F| exactly.
// ---------------------------------------------------------------------------
void criterion_product_pairings(Criterion& c) {
  int checked = 0;
  for (int free_factors = 0; free_factors <= 2; ++free_factors)
    for (int q = 2; q <= 4; ++q) {
      GroupSpec spec = make_finite_cyclic(q);
      if (free_factors > 0) {
        std::vector<GroupSpec> factors(free_factors, make_free_group(2));
        factors.push_back(make_finite_cyclic(q));
        spec = make_direct_product(std::move(factors));
      }
      const std::string name =
          render_group_spec(spec) + " degree " + std::to_string(free_factors);

      const KClassExpr expr = kazhdan_class(spec, free_factors);
      try {
        validate(expr);
      } catch (const std::exception& e) {
        c.fail(name + ": representative rejected (" + std::string(e.what()) + ")");
        continue;
      }

      const Rational expected(1, q);
      if (betti(expr, identity(spec)) != expected)
        c.fail(name + ": canonical pairing != " + to_fraction_string(expected));

      // Delocalised values across the finite tail (e, ..., e, f).
      for (int j = 0; j < q; ++j) {
        std::string tail = j == 0 ? "e" : std::string(j, 't');
        std::string word = tail;
        if (free_factors > 0) {
          word = "(";
          for (int i = 0; i < free_factors; ++i) word += "e,";
          word += tail + ")";
        }
        if (betti(expr, el(spec, word)) != expected)
          c.fail(name + ": pairing at " + word + " != " + to_fraction_string(expected));
        ++checked;
      }
    }
  c.note(std::to_string(checked) +
         " delocalised pairings over finite tails, all exact");
}

// ---------------------------------------------------------------------------
// 4. Structural exactness: chain law, self-adjointness, and the closed-form
//    degree-1 Laplacian.
// ---------------------------------------------------------------------------
void criterion_structural(Criterion& c) {
  for (int m = 2; m <= 5; ++m)
    for (int n = 3; n <= 5; ++n) {
      const std::string name = "Z" + std::to_string(m) + "*Z" + std::to_string(n);
      const CochainComplex complex = free_product_complex(m, n, 3);
      try {
        validate(complex);  // exact chain law
      } catch (const std::exception& e) {
        c.fail(name + ": chain law (" + std::string(e.what()) + ")");
        continue;
      }
      for (const RingMatrix& delta : laplacians(complex))
        if (!is_self_adjoint(delta)) c.fail(name + ": Laplacian not self-adjoint");

      // Independent reconstruction of Delta_1:
      //   (0,0) = 2 - s - s^{m-1} + m (1 + s + ... + s^{m-1})
      //   (1,1) = 2 - t - t^{n-1} + n (1 + t + ... + t^{n-1})
      //   (0,1) = (1 - s)(1 - t^{-1}),   (1,0) = its adjoint.
      const GroupSpec& g = complex.spec;
      const auto pow_word = [](char letter, int k) {
        return k == 0 ? std::string("e") : std::string(k, letter);
      };
      RingMatrix expected = mat_zero(g, 2, 2);
      {
        RingElement diag = words(g, {{"e", 2}});
        diag = subtract(diag, ring_delta(g, el(g, "s")));
        diag = subtract(diag, ring_delta(g, el(g, pow_word('s', m - 1))));
        for (int i = 0; i < m; ++i)
          diag = add(diag, ring_delta(g, el(g, pow_word('s', i)), m));
        expected.at(0, 0) = diag;
      }
      {
        RingElement diag = words(g, {{"e", 2}});
        diag = subtract(diag, ring_delta(g, el(g, "t")));
        diag = subtract(diag, ring_delta(g, el(g, pow_word('t', n - 1))));
        for (int j = 0; j < n; ++j)
          diag = add(diag, ring_delta(g, el(g, pow_word('t', j)), n));
        expected.at(1, 1) = diag;
      }
      const RingElement one_minus_s = subtract(ring_one(g), ring_delta(g, el(g, "s")));
      const RingElement one_minus_t = subtract(ring_one(g), ring_delta(g, el(g, "t")));
      expected.at(0, 1) = convolve(one_minus_s, star(one_minus_t));
      expected.at(1, 0) = star(expected.at(0, 1));

      if (!(laplacian(complex, 1) == expected))
        c.fail(name + ": Delta_1 differs from the closed form");
    }

  // The printed matrix for (2,3), coefficient by coefficient.
  const CochainComplex psl = free_product_complex(2, 3, 2);
  const GroupSpec& g = psl.spec;
  RingMatrix printed = mat_zero(g, 2, 2);
  printed.at(0, 0) = words(g, {{"e", 4}});
  printed.at(0, 1) = words(g, {{"e", 1}, {"s", -1}, {"tt", -1}, {"stt", 1}});
  printed.at(1, 0) = words(g, {{"e", 1}, {"s", -1}, {"t", -1}, {"ts", 1}});
  printed.at(1, 1) = words(g, {{"e", 5}, {"t", 2}, {"tt", 2}});
  if (!(laplacian(psl, 1) == printed))
    c.fail("(2,3): Delta_1 differs from the printed matrix");
  else
    c.note("12 products validated; (2,3) matches the printed matrix entrywise");
}

// ---------------------------------------------------------------------------
// 5. Kernel-structure verification across small free products.
// ---------------------------------------------------------------------------
void criterion_kernel_checks(Criterion& c) {
  KernelCheckOptions opts;
  opts.altproj_radius = 6;  // diagnostic only; keep the windows small
  opts.altproj_iterations = 200;
  for (int m = 2; m <= 5; ++m)
    for (int n = 3; n <= 5; ++n) {
      const std::string name = "Z" + std::to_string(m) + "*Z" + std::to_string(n);
      const KernelCheckReport report = verify_kernel_structure(m, n, opts);
      if (!report.splitting_identity_ok) c.fail(name + ": splitting identity");
      if (!report.factorization_ok) c.fail(name + ": averaging factorization");
      if (!report.witness_ok) c.fail(name + ": kernel witness");
      if (!(report.witness_residual < 1e-6))
        c.fail(name + ": witness residual " + fmt(report.witness_residual));
      if (report.passed() && m == 2 && n == 3)
        c.note("(2,3): witness norm^2 = " + to_fraction_string(report.witness_norm_sq) +
               ", residual " + fmt(report.witness_residual) + ", altproj diagnostic " +
               fmt(report.altproj_residual, 3));
    }
  c.note("12 products: exact identities plus a zero-residual kernel witness");
}

// ---------------------------------------------------------------------------
// 6. Engine agreement: windowed evolution within the certified Taylor band
//    of the exact partial sum.
// ---------------------------------------------------------------------------
void criterion_engine_agreement(Criterion& c) {
  struct Operator {
    std::string name;
    CochainComplex complex;
    int degree;
    int order;   // exact Taylor order
    int radius;  // window radius for the float engine
    std::vector<std::string> class_words;
  };
  const std::vector<Operator> operators = {
      {"Z2*Z3 degree 0", free_product_complex(2, 3, 2), 0, 36, 30,
       {"e", "s", "t", "st"}},
      {"Z2*Z3 degree 1", free_product_complex(2, 3, 2), 1, 36, 30,
       {"e", "s", "t", "st"}},
      {"F2 degree 1", free_group_complex(2), 1, 10, 11, {"e", "a", "b", "ab"}},
  };
  const std::vector<Rational> ts = {Rational(1, 4), Rational(1, 2), Rational(1)};

  for (const Operator& op : operators) {
    const GroupSpec& g = op.complex.spec;
    std::vector<GroupElement> classes;
    for (const auto& w : op.class_words) classes.push_back(el(g, w));

    // Run the windowed float engine for every t first, then release the
    // compression before the exact Taylor sweep so the two never coexist.
    std::vector<std::vector<double>> numeric_by_t;
    {
      const CompressedOperator comp =
          compress(laplacian(op.complex, op.degree), op.radius);
      for (const Rational& t : ts)
        numeric_by_t.push_back(heat_values_numeric(comp, to_double(t), classes));
    }

    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      const Rational& t = ts[ti];
      const std::vector<double>& numeric = numeric_by_t[ti];
      double worst = 0.0;
      double band = 0.0;
      for (std::size_t j = 0; j < classes.size(); ++j) {
        const ExactHeatResult exact =
            heat_trace_exact(op.complex, op.degree, t, classes[j], op.order);
        if (!exact.bound_valid) {
          c.fail(op.name + " t=" + to_fraction_string(t) + " " + op.class_words[j] +
                 ": Taylor tail not certified at order " + std::to_string(op.order));
          continue;
        }
        band = exact.remainder_bound + 1e-8;
        const double diff = std::abs(numeric[j] - to_double(exact.value));
        worst = std::max(worst, diff);
        if (!(diff <= band))
          c.fail(op.name + " t=" + to_fraction_string(t) + " " + op.class_words[j] +
                 ": |float - exact| = " + fmt(diff) + " > band " + fmt(band));
      }
      c.note(op.name + " t=" + to_fraction_string(t) + ": max |float - exact| " +
             fmt(worst, 3) + " within band " + fmt(band, 3));
    }
  }
}

// ---------------------------------------------------------------------------
// 7. Heat values at large t against the analytic targets.
// ---------------------------------------------------------------------------
void criterion_heat_targets(Criterion& c) {
  struct Leg {
    std::string name;
    CochainComplex complex;
    int degree;
    std::string class_word;
    double target;
    // Largest feasible enlargement of the radius-8 window used for the
    // truncation-stability report.  Free-product balls grow like 2^(r/2), so
    // doubling to 16 is cheap; free-group balls grow like 3^r, so radius 16
    // would need ~8.6e7 basis vectors and radius 10 (a 9x larger window than
    // radius 8) is the practical ceiling.
    int stability_radius;
    // (t, radius) schedule printed when the leg misses its target, to show
    // how the value moves as time and window grow together.
    std::vector<std::pair<double, int>> profile;
  };
  const std::vector<std::pair<double, int>> fp_profile = {
      {10, 8}, {15, 12}, {20, 16}, {25, 18}, {30, 20}};
  const std::vector<std::pair<double, int>> fg_profile = {{15, 9}, {20, 10}};
  std::vector<Leg> legs = {
      {"Z2*Z3 degree 1, g = e", free_product_complex(2, 3, 2), 1, "e", 1.0 / 6.0, 16,
       fp_profile},
      {"Z2*Z3 degree 1, g = s", free_product_complex(2, 3, 2), 1, "s", -0.5, 16,
       fp_profile},
      {"F2 degree 1, g = e", free_group_complex(2), 1, "e", 1.0, 10, fg_profile},
      {"Z2*Z3 degree 0, g = e", free_product_complex(2, 3, 2), 0, "e", 0.0, 16,
       fp_profile},
  };
  const double t = 10.0;
  const int radius = 8;
  const double tol = 0.02;

  for (const Leg& leg : legs) {
    const GroupSpec& g = leg.complex.spec;
    const GroupElement cls = el(g, leg.class_word);
    const RingMatrix delta = laplacian(leg.complex, leg.degree);

    const double value = heat_trace_numeric(delta, t, cls, radius);
    const double widened = heat_trace_numeric(delta, t, cls, leg.stability_radius);
    const double err = std::abs(value - leg.target);
    const bool ok = err <= tol;
    if (!ok)
      c.fail(leg.name + ": value " + fmt(value) + ", target " + fmt(leg.target, 3) +
             ", |err| " + fmt(err, 3) + " > " + fmt(tol, 3));
    c.note(leg.name + ": t=10 r=8 -> " + fmt(value) + " (target " + fmt(leg.target, 4) +
           ", |err| " + fmt(err, 3) + (ok ? ", in band" : ", out of band") + "; r=" +
           std::to_string(leg.stability_radius) + " -> " + fmt(widened) + ", drift " +
           fmt(std::abs(widened - value), 2) + ")");

    if (!ok) {
      // Document how the value moves as (t, radius) grows together: the
      // delocalised class needs both a longer time and a wider window.
      c.note("  slow-convergence profile for " + leg.name + ":");
      for (const auto& [tt, rr] : leg.profile) {
        const double v = heat_trace_numeric(delta, tt, cls, rr);
        c.note("    t=" + fmt(tt, 3) + " r=" + std::to_string(rr) + " -> " + fmt(v) +
               "  (gap to target " + fmt(std::abs(v - leg.target), 3) + ")");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 8. Vanishing: degree-2 zeros on free products and inversion symmetry.
// ---------------------------------------------------------------------------
void criterion_vanishing(Criterion& c) {
  for (int m = 2; m <= 6; ++m)
    for (int n = 3; n <= 6; ++n) {
      const GroupSpec g = make_free_product({m, n});
      const KClassExpr expr = kazhdan_class(g, 2);
      if (!expr.terms.empty())
        c.fail("Z" + std::to_string(m) + "*Z" + std::to_string(n) +
               ": degree-2 representative should be structurally zero");
      for (const std::string word : {"e", "s", "t", "st"})
        if (betti(expr, el(g, word)) != 0)
          c.fail("Z" + std::to_string(m) + "*Z" + std::to_string(n) +
                 ": degree-2 value at " + word + " nonzero");
    }
  c.note("degree-2 values vanish structurally on 20 free products");

  int pairs = 0;
  const GroupSpec psl = make_free_product({2, 3});
  const KClassExpr expr = kazhdan_class(psl, 1);
  for (const std::string word : {"e", "s", "t", "tt", "st", "ts", "stt", "tst", "stts"}) {
    const GroupElement x = el(psl, word);
    if (betti(expr, x) != betti(expr, inverse(psl, x)))
      c.fail("inversion symmetry fails at " + word + " on Z2*Z3");
    ++pairs;
  }
  const GroupSpec prod =
      make_direct_product({make_free_group(2), make_free_group(2), make_finite_cyclic(3)});
  const KClassExpr pexpr = kazhdan_class(prod, 2);
  for (const std::string word : {"(e,e,e)", "(e,e,t)", "(a,b,tt)"}) {
    const GroupElement x = el(prod, word);
    if (betti(pexpr, x) != betti(pexpr, inverse(prod, x)))
      c.fail("inversion symmetry fails at " + word + " on F2xF2xZ3");
    ++pairs;
  }
  c.note("inversion symmetry betti(g) = betti(g^-1) exact on " +
         std::to_string(pairs) + " classes");
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, void (*)(Criterion&)>> criteria = {
      {"exact identity values on free products", criterion_identity_table},
      {"delocalised table for Z2*Z3", criterion_psl_table},
      {"product representatives pair to 1/|F|", criterion_product_pairings},
      {"chain law and closed-form Delta_1", criterion_structural},
      {"kernel-structure verification", criterion_kernel_checks},
      {"exact and float engines agree within certified bands",
       criterion_engine_agreement},
      {"large-t heat values against analytic targets", criterion_heat_targets},
      {"vanishing and inversion symmetry", criterion_vanishing},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    c.id = static_cast<int>(i) + 1;
    c.title = criteria[i].first;
    std::cerr << "[acceptance] running criterion " << c.id << ": " << c.title
              << std::endl;
    const auto start = Clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.fail(std::string("unexpected exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    // Wall-clock budgets: 1 s for the identity table, 1 min for engine
    // agreement, 10 min for the large-t targets.
    const double budget = c.id == 1 ? 1.0 : c.id == 6 ? 60.0 : c.id == 7 ? 600.0 : 0.0;
    if (budget > 0.0 && c.seconds >= budget) {
      c.passed = false;
      c.details.push_back("FAIL runtime " + fmt(c.seconds, 3) +
                          " s exceeds the " + fmt(budget, 3) + " s budget");
    }

    std::cout << "criterion " << c.id << ": " << (c.passed ? "PASS" : "FAIL") << " — "
              << c.title << " (" << fmt(c.seconds, 3) << " s)\n";
    for (const auto& line : c.details) std::cout << "    " << line << "\n";
    std::cout.flush();
    if (!c.passed) ++failures;
  }

  std::cout << (static_cast<int>(criteria.size()) - failures) << "/" << criteria.size()
            << " criteria passed\n";
  return failures;
}
