#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "superdual/oddreflect.hpp"
#include "superdual/partition.hpp"
#include "superdual/rootdata.hpp"

using namespace superdual;

namespace {

Weight u(int d) { return Weight::unit(d); }

std::vector<RootSystemSpec> structural_sweep(TailType tail, int n) {
  std::vector<RootSystemSpec> all;
  for (HeadType head : {HeadType::B, HeadType::BBullet, HeadType::C, HeadType::D})
    for (int m : {0, 1, 2}) {
      if (head == HeadType::D && m == 1) continue;
      all.emplace_back(head, m, tail, n);
    }
  return all;
}

bool touches_half_index(const Weight& w) {
  for (const auto& [d, c] : w.coords())
    if (idx::is_half(d) && !c.is_zero()) return true;
  return false;
}

bool touches_positive_integer_index(const Weight& w) {
  for (const auto& [d, c] : w.coords())
    if (d > 0 && idx::is_integer(d) && !c.is_zero()) return true;
  return false;
}

std::vector<Partition> partitions_up_to(long long size) {
  std::vector<Partition> all;
  for (long long k = 0; k <= size; ++k)
    for (const Partition& p : partitions_of(k)) all.push_back(p);
  return all;
}

}  // namespace

TEST_SUITE("oddreflect") {

TEST_CASE("highest-weight update follows the pairing") {
  Weight alpha = u(1) - u(2);  // eps_{1/2} - eps_1, isotropic odd
  CHECK(update_highest_weight(Weight(), alpha) == Weight());
  // Zero pairing: lambda = eps_{1/2} + eps_1 pairs to -1 + ... check:
  // (lambda|alpha) = 1*(-1)*1 + 1*1*(-1) = -2, nonzero -> subtract.
  Weight lam = u(1) + u(2);
  CHECK(update_highest_weight(lam, alpha) == lam - alpha);
  // lambda = eps_{1/2} - eps_1 has (lambda|alpha) = -1 - (-1)... compute:
  // -1*1... use a weight orthogonal to alpha instead: eps_{3/2}.
  CHECK(update_highest_weight(u(3), alpha) == u(3));
  // Mixed: lambda supported elsewhere plus a level is inert.
  Weight lvl = u(3);
  lvl.set_level(Rational(-2));
  CHECK(update_highest_weight(lvl, alpha) == lvl);
}

TEST_CASE("canonical sequences enumerate batch by batch") {
  CHECK(btilde_c_sequence(1) == std::vector<Weight>{u(1) - u(2)});
  CHECK(btilde_c_sequence(2) ==
        std::vector<Weight>{u(1) - u(2), u(3) - u(4), u(1) - u(4)});
  CHECK(btilde_s_sequence(1) == std::vector<Weight>{u(2) - u(3)});
  CHECK(btilde_s_sequence(2) ==
        std::vector<Weight>{u(2) - u(3), u(4) - u(5), u(2) - u(5)});
  for (int n : {1, 2, 3, 4, 5}) {
    CHECK(btilde_c_sequence(n).size() == static_cast<std::size_t>(n) * (n + 1) / 2);
    CHECK(btilde_s_sequence(n).size() == static_cast<std::size_t>(n) * (n + 1) / 2);
  }
  CHECK_THROWS_AS(btilde_c_sequence(0), std::invalid_argument);
  CHECK_THROWS_AS(btilde_s_sequence(0), std::invalid_argument);
}

TEST_CASE("odd reflection rewrites the simple roots in place") {
  RootSystemSpec spec(HeadType::C, 0, TailType::Full, 2);
  BorelState start(spec);
  REQUIRE(start.simple_roots() ==
          std::vector<Weight>{-(u(1) + u(2)), u(1) - u(2), u(2) - u(3), u(3) - u(4)});

  Weight alpha = u(1) - u(2);
  BorelState next = start.odd_reflect(alpha);
  // Neighbors with nonzero pairing absorb alpha; alpha itself flips; the
  // far root is untouched.
  CHECK(next.simple_roots() ==
        std::vector<Weight>{Weight::term(2, Rational(-2)), u(2) - u(1), u(1) - u(3),
                            u(3) - u(4)});
  // -2 eps_1 and eps_{1/2} - eps_{3/2} are even; the flip and the far
  // chain root stay odd.
  CHECK(next.parities() == std::vector<int>{0, 1, 0, 1});
  CHECK(next.history() == std::vector<Weight>{alpha});

  // Positive system flips exactly alpha.
  CHECK_FALSE(next.is_positive(alpha));
  CHECK(next.is_positive(-alpha));
  CHECK(next.positive_roots().size() == start.positive_roots().size());
  for (const Weight& g : start.positive_roots())
    CHECK((next.is_positive(g) != next.is_positive(-g)));
}

TEST_CASE("odd reflection is an involution through the negated root") {
  for (HeadType head : {HeadType::B, HeadType::BBullet, HeadType::C, HeadType::D}) {
    RootSystemSpec spec(head, head == HeadType::D ? 2 : 1, TailType::Full, 2);
    BorelState start(spec);
    for (std::size_t i = 0; i < start.simple_roots().size(); ++i) {
      Weight alpha = start.simple_roots()[i];
      if (start.parities()[i] != 1 || !RootSystemSpec::is_isotropic(alpha)) continue;
      BorelState once = start.odd_reflect(alpha);
      BorelState back = once.odd_reflect(-alpha);
      CHECK(back.simple_roots() == start.simple_roots());
      CHECK(back.parities() == start.parities());
      CHECK(back.positive_roots() == start.positive_roots());
    }
  }
}

TEST_CASE("reflection preconditions are enforced") {
  RootSystemSpec spec(HeadType::C, 1, TailType::Full, 1);
  BorelState st(spec);
  // Not simple.
  CHECK_THROWS_AS(st.odd_reflect(u(-2) - u(2)), std::invalid_argument);
  // Even simple root rejected by odd_reflect.
  CHECK_THROWS_AS(st.odd_reflect(Weight::term(-2, Rational(-2))), std::invalid_argument);
  // Odd isotropic simple rejected by real_reflect.
  CHECK_THROWS_AS(st.real_reflect(u(-2) - u(1)), std::invalid_argument);

  // Odd non-isotropic simple roots may not be reflected at either way.
  RootSystemSpec bsup(HeadType::B, 0, TailType::Super, 2);
  BorelState bst(bsup);
  REQUIRE(bst.simple_roots()[0] == -u(1));
  REQUIRE(bst.parities()[0] == 1);
  CHECK_THROWS_AS(bst.odd_reflect(-u(1)), std::invalid_argument);
  CHECK_THROWS_AS(bst.real_reflect(-u(1)), std::invalid_argument);
}

TEST_CASE("real reflection moves the whole simple set") {
  RootSystemSpec spec(HeadType::C, 0, TailType::Even, 2);
  BorelState st(spec);
  Weight alpha = Weight::term(2, Rational(-2));
  BorelState next = st.real_reflect(alpha);
  CHECK(next.simple_roots() ==
        std::vector<Weight>{Weight::term(2, Rational(2)), -(u(2) + u(4))});
  CHECK_FALSE(next.is_positive(alpha));
  CHECK(next.is_positive(-alpha));
  for (const Weight& g : st.positive_roots())
    CHECK((next.is_positive(g) != next.is_positive(-g)));

  // Reflecting back at the flipped root restores the state.
  BorelState back = next.real_reflect(-alpha);
  CHECK(back.simple_roots() == st.simple_roots());
  CHECK(back.positive_roots() == st.positive_roots());

  CHECK(reflect_weight(u(2), alpha) == -u(2));
  CHECK(reflect_weight(u(4), alpha) == u(4));
  CHECK_THROWS_AS(reflect_weight(u(2), u(2) - u(1)), std::invalid_argument);
}

TEST_CASE("post-sequence diagram: integer block becomes the even-tail datum") {
  for (int n : {1, 2, 3, 4}) {
    for (const RootSystemSpec& spec : structural_sweep(TailType::Full, n)) {
      CAPTURE(spec.str());
      CAPTURE(n);
      BorelState st(spec);
      for (const Weight& alpha : btilde_c_sequence(n)) st = st.odd_reflect(alpha);

      std::set<Weight> integer_block, rest;
      for (const Weight& beta : st.simple_roots())
        (touches_half_index(beta) ? rest : integer_block).insert(beta);

      RootSystemSpec even(spec.head(), spec.m(), TailType::Even, n);
      std::set<Weight> expect_block(even.simple_roots().begin(), even.simple_roots().end());
      CHECK(integer_block == expect_block);
      // No isotropic root hides in the block: the bridge is the first
      // isotropic odd simple root of the rewritten diagram.
      for (const Weight& beta : integer_block)
        CHECK_FALSE(RootSystemSpec::is_isotropic(beta));

      if (spec.head() == HeadType::D && spec.m() == 0 && n == 1) {
        // The even-tail datum of rank (0,1) is empty, so the D-fork ends up
        // straddling the seam as two isotropic odd roots.
        CHECK(rest == std::set<Weight>{-(u(1) + u(2)), u(2) - u(1)});
        continue;
      }
      std::set<Weight> expect_rest = {u(2 * n) - u(1)};
      for (int j = 1; j < n; ++j) expect_rest.insert(u(2 * j - 1) - u(2 * j + 1));
      CHECK(rest == expect_rest);
      // The bridge out of the block is the diagram's first isotropic odd
      // root; the half-index chain after it is even.
      for (const Weight& beta : rest)
        CHECK(RootSystemSpec::is_isotropic(beta) == (beta == u(2 * n) - u(1)));
    }
  }
}

TEST_CASE("post-sequence diagram: half block becomes the super-tail datum") {
  for (int n : {1, 2, 3}) {
    for (const RootSystemSpec& spec : structural_sweep(TailType::Full, n + 1)) {
      CAPTURE(spec.str());
      CAPTURE(n);
      BorelState st(spec);
      for (const Weight& alpha : btilde_s_sequence(n)) st = st.odd_reflect(alpha);

      std::set<Weight> half_block, rest;
      for (const Weight& beta : st.simple_roots())
        (touches_positive_integer_index(beta) ? rest : half_block).insert(beta);

      RootSystemSpec sup(spec.head(), spec.m(), TailType::Super, n + 1);
      std::set<Weight> expect_block(sup.simple_roots().begin(), sup.simple_roots().end());
      CHECK(half_block == expect_block);

      std::set<Weight> expect_rest = {u(2 * n + 1) - u(2)};
      for (int j = 1; j <= n; ++j) expect_rest.insert(u(2 * j) - u(2 * j + 2));
      CHECK(rest == expect_rest);
      for (const Weight& beta : rest)
        CHECK(RootSystemSpec::is_isotropic(beta) == (beta == u(2 * n + 1) - u(2)));
    }
  }
}

TEST_CASE("sequences leave the nilradical root sets invariant") {
  std::vector<RootSystemSpec> specs;
  specs.emplace_back(HeadType::C, 1, TailType::Full, 2,
                     std::vector<std::string>{"alpha_-1"});
  specs.emplace_back(HeadType::B, 2, TailType::Full, 2,
                     std::vector<std::string>{"alpha_-1", "alpha_-2"});
  specs.emplace_back(HeadType::D, 2, TailType::Full, 2, std::vector<std::string>{});
  for (const RootSystemSpec& spec : specs) {
    CAPTURE(spec.str());
    std::set<Weight> levi_pm;
    for (const Weight& g : spec.levi_positive_roots()) {
      levi_pm.insert(g);
      levi_pm.insert(-g);
    }
    std::set<Weight> u_start;
    for (const Weight& g : spec.positive_roots())
      if (!levi_pm.count(g)) u_start.insert(g);
    REQUIRE(u_start.size() == spec.opposite_nilradical_roots().size());

    for (const std::vector<Weight>& seq : {btilde_c_sequence(2), btilde_s_sequence(1)}) {
      BorelState st(spec);
      for (const Weight& alpha : seq) {
        CHECK(levi_pm.count(alpha));  // every reflection root lies in the Levi
        st = st.odd_reflect(alpha);
      }
      std::set<Weight> u_after;
      for (const Weight& g : st.positive_roots())
        if (!levi_pm.count(g)) u_after.insert(g);
      CHECK(u_after == u_start);
    }
  }
}

TEST_CASE("folding the c-sequence lands on the even-tail weight") {
  for (int n : {1, 2, 3, 4}) {
    for (HeadType head : {HeadType::B, HeadType::C}) {
      for (int m : {0, 2}) {
        RootSystemSpec full(head, m, TailType::Full, n);
        RootSystemSpec even(head, m, TailType::Even, n);
        for (const Partition& p : partitions_up_to(8)) {
          if (static_cast<int>(p.length()) > n) continue;
          DominantTuple t{{}, p, Rational(-3)};
          for (int i = 0; i < m; ++i) t.head_coeffs.push_back(Rational(-2 * i - 1, 2));
          Weight start = make_weight_gtilde(full, t);
          Weight expect = make_weight_g(even, t);
          CHECK(apply_sequence(full, start, btilde_c_sequence(n)) == expect);
        }
      }
    }
  }
}

TEST_CASE("folding the s-sequence lands on the super-tail weight") {
  for (int n : {1, 2, 3, 4}) {
    for (HeadType head : {HeadType::D, HeadType::BBullet}) {
      for (int m : {0, 2}) {
        RootSystemSpec full(head, m, TailType::Full, n + 1);
        RootSystemSpec sup(head, m, TailType::Super, n + 1);
        for (const Partition& p : partitions_up_to(8)) {
          if (p.empty() ? false : p.row(1) > n) continue;
          DominantTuple t{{}, p, Rational(2)};
          for (int i = 0; i < m; ++i) t.head_coeffs.push_back(Rational(-i));
          Weight start = make_weight_gtilde(full, t);
          Weight expect = make_weight_gbar(sup, t);
          CHECK(apply_sequence(full, start, btilde_s_sequence(n)) == expect);
        }
      }
    }
  }
}

TEST_CASE("empty tail partition is inert under both sequences") {
  RootSystemSpec full(HeadType::C, 2, TailType::Full, 3);
  DominantTuple t{{Rational(-1), Rational(-4)}, Partition({}), Rational(1)};
  Weight start = make_weight_gtilde(full, t);
  CHECK(apply_sequence(full, start, btilde_c_sequence(3)) == start);
  CHECK(apply_sequence(full, start, btilde_s_sequence(2)) == start);
}

TEST_CASE("trace records every intermediate weight") {
  RootSystemSpec full(HeadType::D, 0, TailType::Full, 2);
  DominantTuple t{{}, Partition({3, 1}), Rational(0)};
  Weight start = make_weight_gtilde(full, t);
  auto trace = apply_sequence_trace(full, start, btilde_c_sequence(2));
  REQUIRE(trace.size() == 4);
  CHECK(trace[0] == start);
  CHECK(trace[0] == Rational(2) * u(1) + Rational(2) * u(2));
  CHECK(trace[1] == u(1) + Rational(3) * u(2));  // first step absorbs one box
  CHECK(trace[2] == trace[1]);                   // eps_{3/2} - eps_2 pairs to zero
  CHECK(trace[3] == Rational(3) * u(2) + u(4));  // final even-tail weight
}

TEST_CASE("sequence application reports the failing step") {
  RootSystemSpec full(HeadType::D, 0, TailType::Full, 2);
  Weight zero;

  // s-sequence of rank 2 needs index 5/2, absent from a rank-2 full tail.
  try {
    apply_sequence(full, zero, btilde_s_sequence(2));
    FAIL("expected a step failure");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("step 2") == 0);
  }

  // Reflecting twice at the same root fails at the second step.
  try {
    Weight alpha = u(1) - u(2);
    apply_sequence(full, zero, {alpha, alpha});
    FAIL("expected a step failure");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("step 2") == 0);
  }
}

}  // TEST_SUITE
