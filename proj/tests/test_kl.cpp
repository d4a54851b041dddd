#include "superdual/kl.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "doctest.h"
#include "superdual/signedperm.hpp"

using namespace superdual;

namespace {

std::set<int> all_generators(CoxeterType t, int rank) {
  std::set<int> J;
  for (int i = (t == CoxeterType::D && rank < 2) ? 1 : 0; i < rank; ++i) J.insert(i);
  return J;
}

std::vector<SignedPerm> whole_group(CoxeterType t, int rank) {
  return parabolic_subgroup_elements(t, rank, all_generators(t, rank));
}

SignedPerm from_word(CoxeterType t, int rank, const std::vector<int>& word) {
  SignedPerm w = SignedPerm::identity(t, rank);
  for (const int letter : word) w = w.right_gen(letter);
  return w;
}

SignedPerm random_element(CoxeterType t, int rank, std::mt19937& rng) {
  std::vector<int> win(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) win[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(win.begin(), win.end(), rng);
  int negatives = 0;
  for (int& v : win) {
    if (rng() % 2 == 0) {
      v = -v;
      ++negatives;
    }
  }
  if (t == CoxeterType::D && negatives % 2 != 0) win.front() = -win.front();
  return SignedPerm(t, std::move(win));
}

}  // namespace

TEST_SUITE("kl") {

TEST_CASE("rank-2 groups are dihedral: every polynomial below the top is 1") {
  KLContext ctx(CoxeterType::BC, 2);
  const auto group = whole_group(CoxeterType::BC, 2);
  for (const SignedPerm& w : group) {
    for (const SignedPerm& x : group) {
      const LaurentPoly p = ctx.kl_polynomial(x, w);
      if (ctx.bruhat(x, w)) {
        CHECK(p == LaurentPoly(1));
        // In a dihedral group mu is 1 exactly at length difference one.
        CHECK(ctx.mu(x, w) == ((w.length() - x.length() == 1) ? 1 : 0));
      } else {
        CHECK(p.is_zero());
      }
    }
  }
}

// The pair (bar-invariance via R-polynomials, strict degree bound) uniquely
// characterizes Kazhdan-Lusztig polynomials, so checking both exhaustively
// against the independently implemented R recursion certifies the table.
TEST_CASE("inversion identity and degree bounds hold on all of rank 3") {
  for (const auto t : {CoxeterType::BC, CoxeterType::D}) {
    KLContext ctx(t, 3);
    const auto group = whole_group(t, 3);
    for (const SignedPerm& w : group) {
      for (const SignedPerm& x : group) {
        if (!ctx.bruhat(x, w)) {
          CHECK(ctx.kl_polynomial(x, w).is_zero());
          CHECK(ctx.r_polynomial(x, w).is_zero());
          continue;
        }
        const LaurentPoly p = ctx.kl_polynomial(x, w);
        const long long diff = w.length() - x.length();
        CHECK(p.coeff(0) == 1);
        for (const auto& [e, c] : p.coeffs()) CHECK(c > 0);
        if (x != w) CHECK(2 * p.max_degree() < diff);
        // q^{len(w)-len(x)} bar(P_{x,w}) = sum_z R_{x,z} P_{z,w}
        LaurentPoly rhs;
        for (const SignedPerm& z : group) {
          if (ctx.bruhat(x, z) && ctx.bruhat(z, w)) {
            rhs += ctx.r_polynomial(x, z) * ctx.kl_polynomial(z, w);
          }
        }
        CHECK(p.bar().shifted(static_cast<int>(diff)) == rhs);
      }
    }
  }
}

TEST_CASE("R-polynomials: degree, vanishing at q = 1, monic leading term") {
  KLContext ctx(CoxeterType::BC, 3);
  const auto group = whole_group(CoxeterType::BC, 3);
  for (const SignedPerm& w : group) {
    for (const SignedPerm& x : group) {
      const LaurentPoly r = ctx.r_polynomial(x, w);
      if (!ctx.bruhat(x, w)) {
        CHECK(r.is_zero());
        continue;
      }
      CHECK(r.max_degree() == w.length() - x.length());
      CHECK(r.coeff(r.max_degree()) == 1);
      if (x != w) CHECK(r.eval_one() == 0);
    }
  }
}

TEST_CASE("the nontrivial rank-3 polynomial 1 + q exists") {
  KLContext ctx(CoxeterType::BC, 3);
  const auto group = whole_group(CoxeterType::BC, 3);
  const LaurentPoly one_plus_q = LaurentPoly(1) + LaurentPoly::q();
  int hits = 0;
  for (const SignedPerm& w : group) {
    for (const SignedPerm& x : group) {
      if (ctx.kl_polynomial(x, w) == one_plus_q) ++hits;
    }
  }
  CHECK(hits > 0);
}

TEST_CASE("rank-4 type D: positivity, unit constant term, degree bound") {
  KLContext ctx(CoxeterType::D, 4);
  const auto group = whole_group(CoxeterType::D, 4);
  for (const SignedPerm& w : group) {
    for (const SignedPerm& x : group) {
      if (!ctx.bruhat(x, w)) continue;
      const LaurentPoly p = ctx.kl_polynomial(x, w);
      CHECK(p.coeff(0) == 1);
      for (const auto& [e, c] : p.coeffs()) CHECK(c > 0);
      if (x != w) CHECK(2 * p.max_degree() < w.length() - x.length());
    }
  }
}

TEST_CASE("type C is served by the common BC engine") {
  CHECK(coxeter_type_from_string("C") == CoxeterType::BC);
  KLContext ctx(coxeter_type_from_string("C"), 2);
  const SignedPerm e = SignedPerm::identity(CoxeterType::BC, 2);
  const SignedPerm w0 = longest_element(CoxeterType::BC, 2, {0, 1});
  CHECK(ctx.kl_polynomial(e, w0) == LaurentPoly(1));
}

TEST_CASE("hand-checked antispherical values in B_2 with J = {1}") {
  KLContext ctx(CoxeterType::BC, 2);
  const std::set<int> J{1};
  const SignedPerm e = SignedPerm::identity(CoxeterType::BC, 2);
  const SignedPerm s0 = from_word(CoxeterType::BC, 2, {0});
  const SignedPerm s01 = from_word(CoxeterType::BC, 2, {0, 1});
  const SignedPerm s010 = from_word(CoxeterType::BC, 2, {0, 1, 0});
  // Minimal representatives of W_J \ W are e, s0, s0s1, s0s1s0.
  for (const SignedPerm& w : {e, s0, s01, s010}) {
    CHECK(is_min_coset_rep_left(w, J));
    CHECK(ctx.parabolic_kl(J, w, w) == LaurentPoly(1));
  }
  // Every ordinary polynomial in a dihedral group is 1, so each value below
  // reduces to counting which of x, s1 x lies under w in Bruhat order.
  CHECK(ctx.parabolic_kl(J, e, s0) == LaurentPoly(1));
  CHECK(ctx.parabolic_kl(J, e, s01).is_zero());
  CHECK(ctx.parabolic_kl(J, s0, s01) == LaurentPoly(1));
  CHECK(ctx.parabolic_kl(J, e, s010).is_zero());
  CHECK(ctx.parabolic_kl(J, s0, s010).is_zero());
  CHECK(ctx.parabolic_kl(J, s01, s010) == LaurentPoly(1));
  // Non-minimal representatives are rejected.
  const SignedPerm s1 = from_word(CoxeterType::BC, 2, {1});
  CHECK_THROWS_AS(ctx.parabolic_kl(J, s1, s010), std::invalid_argument);
  CHECK_THROWS_AS(ctx.parabolic_kl(J, e, s1), std::invalid_argument);
}

TEST_CASE("empty Levi set reduces the parabolic polynomial to the ordinary one") {
  KLContext ctx(CoxeterType::BC, 3);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const SignedPerm x = random_element(CoxeterType::BC, 3, rng);
    const SignedPerm w = random_element(CoxeterType::BC, 3, rng);
    CHECK(ctx.parabolic_kl({}, x, w) == ctx.kl_polynomial(x, w));
  }
}

TEST_CASE("antispherical polynomials obey the strict degree bound") {
  KLContext ctx(CoxeterType::BC, 3);
  for (const std::set<int>& J : {std::set<int>{0}, std::set<int>{1, 2}}) {
    std::vector<SignedPerm> reps;
    for (const SignedPerm& w : whole_group(CoxeterType::BC, 3)) {
      if (is_min_coset_rep_left(w, J)) reps.push_back(w);
    }
    for (const SignedPerm& w : reps) {
      for (const SignedPerm& x : reps) {
        const LaurentPoly n = ctx.parabolic_kl(J, x, w);
        if (n.is_zero() || x == w) continue;
        CHECK(2 * n.max_degree() < w.length() - x.length());
        for (const auto& [e, c] : n.coeffs()) CHECK(c > 0);
      }
    }
  }
}

TEST_CASE("disk cache round-trips and skips foreign records") {
  namespace fs = std::filesystem;
  const fs::path file = fs::temp_directory_path() / "superdual-kl-cache-test.jsonl";
  const SignedPerm e = SignedPerm::identity(CoxeterType::BC, 3);
  const SignedPerm w0 = longest_element(CoxeterType::BC, 3, {0, 1, 2});
  LaurentPoly reference;
  std::size_t written = 0;
  {
    KLContext ctx(CoxeterType::BC, 3);
    reference = ctx.kl_polynomial(e, w0);
    written = ctx.save_cache(file);
    CHECK(written == ctx.cached_polynomials());
    CHECK(written > 0);
  }
  {
    KLContext ctx(CoxeterType::BC, 3);
    CHECK(ctx.load_cache(file) == written);
    CHECK(ctx.cached_polynomials() == 0);  // loaded records are not columns
    CHECK(ctx.kl_polynomial(e, w0) == reference);
  }
  {
    // Corrupt lines, wrong versions, and wrong ranks are skipped quietly.
    std::ofstream out(file, std::ios::app);
    out << "not json at all\n";
    out << R"({"v":2,"type":"B","rank":3,"x":[1,2,3],"w":[1,2,3],"coeffs":[1]})" << "\n";
    out << R"({"v":1,"type":"D","rank":3,"x":[1,2,3],"w":[1,2,3],"coeffs":[1]})" << "\n";
    out << R"({"v":1,"type":"B","rank":2,"x":[1,2],"w":[1,2],"coeffs":[1]})" << "\n";
  }
  {
    KLContext ctx(CoxeterType::BC, 3);
    CHECK(ctx.load_cache(file) == written);
    KLContext other(CoxeterType::D, 3);
    CHECK(other.load_cache(file) == 1);  // exactly the matching D record
  }
  fs::remove(file);
}

TEST_CASE("concurrent queries agree with serial answers") {
  std::mt19937 rng(31);
  std::vector<std::pair<SignedPerm, SignedPerm>> queries;
  for (int i = 0; i < 200; ++i) {
    queries.emplace_back(random_element(CoxeterType::D, 4, rng),
                         random_element(CoxeterType::D, 4, rng));
  }
  KLContext serial(CoxeterType::D, 4);
  std::vector<LaurentPoly> expected;
  for (const auto& [x, w] : queries) expected.push_back(serial.kl_polynomial(x, w));

  KLContext shared(CoxeterType::D, 4);
  std::vector<LaurentPoly> got(queries.size());
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t]() {
      for (std::size_t i = static_cast<std::size_t>(t); i < queries.size(); i += 4) {
        got[i] = shared.kl_polynomial(queries[i].first, queries[i].second);
      }
    });
  }
  for (auto& th : workers) th.join();
  for (std::size_t i = 0; i < queries.size(); ++i) CHECK(got[i] == expected[i]);
}

TEST_CASE("antispherical recursion matches the alternating sum exhaustively") {
  // The recursion and the W_J-sum are independent computations (the former
  // never touches ordinary polynomials); agreement over every Levi subset
  // of small groups certifies the module action cases and mu-corrections.
  struct Job {
    CoxeterType type;
    int rank;
  };
  for (const Job job : {Job{CoxeterType::BC, 2}, Job{CoxeterType::BC, 3},
                        Job{CoxeterType::D, 3}}) {
    const std::set<int> all = all_generators(job.type, job.rank);
    std::vector<std::set<int>> subsets{{}};
    for (const int g : all) {
      const std::size_t count = subsets.size();
      for (std::size_t i = 0; i < count; ++i) {
        std::set<int> bigger = subsets[i];
        bigger.insert(g);
        subsets.push_back(std::move(bigger));
      }
    }
    KLContext ctx(job.type, job.rank);
    for (const std::set<int>& J : subsets) {
      std::vector<SignedPerm> reps;
      for (const SignedPerm& w : whole_group(job.type, job.rank)) {
        if (is_min_coset_rep_left(w, J)) reps.push_back(w);
      }
      for (const SignedPerm& w : reps) {
        for (const SignedPerm& x : reps) {
          CHECK(ctx.parabolic_kl(J, x, w) == ctx.parabolic_kl_by_sum(J, x, w));
        }
      }
    }
  }
}

TEST_CASE("antispherical recursion matches the alternating sum on random D_4 pairs") {
  KLContext ctx(CoxeterType::D, 4);
  std::mt19937 rng(47);
  for (const std::set<int>& J :
       {std::set<int>{1, 2, 3}, std::set<int>{0, 1}, std::set<int>{2, 3}}) {
    for (int trial = 0; trial < 60; ++trial) {
      const SignedPerm x = min_coset_rep_left(random_element(CoxeterType::D, 4, rng), J);
      const SignedPerm w = min_coset_rep_left(random_element(CoxeterType::D, 4, rng), J);
      CHECK(ctx.parabolic_kl(J, x, w) == ctx.parabolic_kl_by_sum(J, x, w));
    }
  }
}

TEST_CASE("antispherical recursion handles a Levi too large for the sum") {
  // Full symmetric-group Levi inside B_8: |W_J| = 8! makes the alternating
  // sum impractical, while the recursion only walks descent chains. The
  // internal unit-diagonal, degree, and positivity checks run throughout.
  KLContext ctx(CoxeterType::BC, 8);
  std::set<int> J;
  for (int i = 1; i < 8; ++i) J.insert(i);
  // Coset representatives picked as sign-flip patterns sorted to window
  // order; e.g. flipping only position 1 gives the minimal representative
  // [-1, 2, ..., 8].
  auto flip_rep = [](std::initializer_list<int> flips) {
    std::vector<int> win;
    for (int i = 1; i <= 8; ++i) win.push_back(i);
    for (const int f : flips) win[static_cast<std::size_t>(f - 1)] = -f;
    std::sort(win.begin(), win.end());
    return SignedPerm(CoxeterType::BC, win);
  };
  const SignedPerm e = SignedPerm::identity(CoxeterType::BC, 8);
  const SignedPerm one = flip_rep({1});
  const SignedPerm two = flip_rep({1, 2});
  const SignedPerm deep = flip_rep({1, 2, 3, 4});
  for (const SignedPerm& w : {one, two, deep}) CHECK(is_min_coset_rep_left(w, J));
  CHECK(ctx.parabolic_kl(J, e, e) == LaurentPoly(1));
  CHECK(ctx.parabolic_kl(J, deep, deep) == LaurentPoly(1));
  const LaurentPoly a = ctx.parabolic_kl(J, e, one);
  const LaurentPoly b = ctx.parabolic_kl(J, one, two);
  const LaurentPoly c = ctx.parabolic_kl(J, e, deep);
  for (const LaurentPoly& p : {a, b, c}) {
    if (p.is_zero()) continue;
    CHECK(p.min_degree() >= 0);
    for (const auto& [k, coef] : p.coeffs()) CHECK(coef > 0);
  }
}

TEST_CASE("group mismatches are rejected") {
  KLContext ctx(CoxeterType::BC, 3);
  CHECK_THROWS_AS(ctx.kl_polynomial(SignedPerm::identity(CoxeterType::BC, 2),
                                    SignedPerm::identity(CoxeterType::BC, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ctx.kl_polynomial(SignedPerm::identity(CoxeterType::D, 3),
                                    SignedPerm::identity(CoxeterType::D, 3)),
                  std::invalid_argument);
  KLContext trivial(CoxeterType::D, 1);
  CHECK(trivial.kl_polynomial(SignedPerm::identity(CoxeterType::D, 1),
                              SignedPerm::identity(CoxeterType::D, 1)) == LaurentPoly(1));
}

}  // TEST_SUITE
