#include "superdual/signedperm.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"

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

// Positive system realized by the generator conventions: differences
// e_i - e_j (i < j), the negated basis vectors -e_i (BC only), and the
// negated pair sums -e_i - e_j (i < j).
std::vector<std::vector<int>> generator_positive_roots(CoxeterType t, int rank) {
  std::vector<std::vector<int>> roots;
  for (int i = 0; i < rank; ++i) {
    for (int j = i + 1; j < rank; ++j) {
      std::vector<int> r(static_cast<std::size_t>(rank), 0);
      r[static_cast<std::size_t>(i)] = 1;
      r[static_cast<std::size_t>(j)] = -1;
      roots.push_back(r);
      std::vector<int> s(static_cast<std::size_t>(rank), 0);
      s[static_cast<std::size_t>(i)] = -1;
      s[static_cast<std::size_t>(j)] = -1;
      roots.push_back(s);
    }
    if (t == CoxeterType::BC) {
      std::vector<int> r(static_cast<std::size_t>(rank), 0);
      r[static_cast<std::size_t>(i)] = -1;
      roots.push_back(r);
    }
  }
  return roots;
}

std::vector<int> act(const SignedPerm& w, const std::vector<int>& v) {
  std::vector<int> out(v.size(), 0);
  for (int i = 1; i <= w.rank(); ++i) {
    const int wi = w(i);
    const int c = v[static_cast<std::size_t>(i - 1)];
    out[static_cast<std::size_t>(std::abs(wi) - 1)] += (wi > 0 ? c : -c);
  }
  return out;
}

long long inversion_count_oracle(const SignedPerm& w) {
  const auto positives = generator_positive_roots(w.type(), w.rank());
  const std::set<std::vector<int>> positive_set(positives.begin(), positives.end());
  long long flips = 0;
  for (const auto& r : positives) {
    if (!positive_set.count(act(w, r))) ++flips;
  }
  return flips;
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

// Bruhat oracle via the subword property: x <= w iff x is the product of a
// subsequence of one fixed reduced word of w.
bool bruhat_subword_oracle(const SignedPerm& x, const SignedPerm& w) {
  std::set<SignedPerm> reachable{SignedPerm::identity(w.type(), w.rank())};
  for (const int letter : w.reduced_word()) {
    std::set<SignedPerm> next = reachable;
    for (const SignedPerm& u : reachable) next.insert(u.right_gen(letter));
    reachable = std::move(next);
  }
  return reachable.count(x) > 0;
}

}  // namespace

TEST_SUITE("signedperm") {

TEST_CASE("type strings parse with C folding into the common BC group") {
  CHECK(coxeter_type_from_string("B") == CoxeterType::BC);
  CHECK(coxeter_type_from_string("C") == CoxeterType::BC);
  CHECK(coxeter_type_from_string("D") == CoxeterType::D);
  CHECK(to_string(CoxeterType::BC) == "B");
  CHECK(to_string(CoxeterType::D) == "D");
  CHECK_THROWS_AS(coxeter_type_from_string("E"), std::invalid_argument);
}

TEST_CASE("window validation") {
  CHECK_NOTHROW(SignedPerm(CoxeterType::BC, {2, -1, 3}));
  CHECK_THROWS_AS(SignedPerm(CoxeterType::BC, {}), std::invalid_argument);
  CHECK_THROWS_AS(SignedPerm(CoxeterType::BC, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SignedPerm(CoxeterType::BC, {1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(SignedPerm(CoxeterType::BC, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SignedPerm(CoxeterType::BC, {3, 1}), std::invalid_argument);
  // Type D needs an even number of negative entries.
  CHECK_NOTHROW(SignedPerm(CoxeterType::D, {-2, -1, 3}));
  CHECK_THROWS_AS(SignedPerm(CoxeterType::D, {-2, 1, 3}), std::invalid_argument);
  CHECK(SignedPerm(CoxeterType::BC, {2, -1, 3}).str() == "[2,-1,3]");
}

TEST_CASE("rank-1 type D is the trivial group") {
  const SignedPerm e = SignedPerm::identity(CoxeterType::D, 1);
  CHECK(e.is_identity());
  CHECK(coxeter_group_order(CoxeterType::D, 1) == 1);
  CHECK_THROWS_AS(SignedPerm(CoxeterType::D, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(e.right_gen(0), std::out_of_range);
  CHECK_THROWS_AS(e.right_descent(0), std::out_of_range);
  CHECK(e.right_descents().empty());
  CHECK(e.reduced_word().empty());
  CHECK(whole_group(CoxeterType::D, 1).size() == 1);
}

TEST_CASE("group orders from breadth-first enumeration") {
  CHECK(whole_group(CoxeterType::BC, 1).size() == 2);
  CHECK(whole_group(CoxeterType::BC, 2).size() == 8);
  CHECK(whole_group(CoxeterType::BC, 3).size() == 48);
  CHECK(whole_group(CoxeterType::BC, 4).size() == 384);
  CHECK(whole_group(CoxeterType::D, 2).size() == 4);
  CHECK(whole_group(CoxeterType::D, 3).size() == 24);
  CHECK(whole_group(CoxeterType::D, 4).size() == 192);
  for (int r = 1; r <= 4; ++r) {
    CHECK(static_cast<long long>(whole_group(CoxeterType::BC, r).size()) ==
          coxeter_group_order(CoxeterType::BC, r));
  }
}

TEST_CASE("composition acts by (a*b)(i) = a(b(i)) and inverses cancel") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = (trial % 2 == 0) ? CoxeterType::BC : CoxeterType::D;
    const SignedPerm a = random_element(t, 5, rng);
    const SignedPerm b = random_element(t, 5, rng);
    const SignedPerm c = random_element(t, 5, rng);
    const SignedPerm ab = a * b;
    for (int i = 1; i <= 5; ++i) {
      CHECK(ab(i) == a(b(i)));
      CHECK(ab(-i) == -ab(i));
    }
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).is_identity());
    CHECK((a.inverse() * a).is_identity());
  }
  CHECK_THROWS_AS(SignedPerm::identity(CoxeterType::BC, 2) *
                      SignedPerm::identity(CoxeterType::BC, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(SignedPerm::identity(CoxeterType::BC, 2) *
                      SignedPerm::identity(CoxeterType::D, 2),
                  std::invalid_argument);
}

TEST_CASE("length equals the inversion count over the generator-adapted positive system") {
  for (const auto& [t, rank] : {std::pair{CoxeterType::BC, 2}, {CoxeterType::BC, 3},
                               {CoxeterType::D, 2}, {CoxeterType::D, 3}}) {
    for (const SignedPerm& w : whole_group(t, rank)) {
      CHECK(w.length() == inversion_count_oracle(w));
    }
  }
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const SignedPerm b = random_element(CoxeterType::BC, 5, rng);
    CHECK(b.length() == inversion_count_oracle(b));
    const SignedPerm d = random_element(CoxeterType::D, 5, rng);
    CHECK(d.length() == inversion_count_oracle(d));
  }
}

TEST_CASE("generator products match the dedicated left and right actions") {
  std::mt19937 rng(13);
  for (const auto t : {CoxeterType::BC, CoxeterType::D}) {
    for (int trial = 0; trial < 20; ++trial) {
      const SignedPerm w = random_element(t, 4, rng);
      for (int i = 0; i < 4; ++i) {
        const SignedPerm s = SignedPerm::identity(t, 4).right_gen(i);
        CHECK(s.length() == 1);
        CHECK(w.right_gen(i) == w * s);
        CHECK(w.left_gen(i) == s * w);
      }
    }
  }
}

TEST_CASE("descents detect exactly the length drops") {
  for (const auto& [t, rank] : {std::pair{CoxeterType::BC, 3}, {CoxeterType::D, 3}}) {
    for (const SignedPerm& w : whole_group(t, rank)) {
      for (int i = 0; i < rank; ++i) {
        CHECK(w.right_descent(i) == (w.right_gen(i).length() < w.length()));
        CHECK(w.left_descent(i) == (w.left_gen(i).length() < w.length()));
      }
    }
  }
}

TEST_CASE("reduced words reconstruct the element at the right length") {
  for (const auto& [t, rank] : {std::pair{CoxeterType::BC, 3}, {CoxeterType::D, 4}}) {
    for (const SignedPerm& w : whole_group(t, rank)) {
      const auto word = w.reduced_word();
      CHECK(static_cast<long long>(word.size()) == w.length());
      SignedPerm rebuilt = SignedPerm::identity(t, rank);
      for (const int letter : word) rebuilt = rebuilt.right_gen(letter);
      CHECK(rebuilt == w);
    }
  }
  // Lexicographically smallest reduced word of the B_2 longest element.
  const SignedPerm w0 = longest_element(CoxeterType::BC, 2, {0, 1});
  CHECK(w0.reduced_word() == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("Bruhat order agrees with the subword oracle") {
  for (const auto& [t, rank] : {std::pair{CoxeterType::BC, 3}, {CoxeterType::D, 3}}) {
    const auto group = whole_group(t, rank);
    const SignedPerm e = SignedPerm::identity(t, rank);
    for (const SignedPerm& w : group) {
      CHECK(bruhat_leq(e, w));
      for (const SignedPerm& x : group) {
        CHECK(bruhat_leq(x, w) == bruhat_subword_oracle(x, w));
      }
    }
  }
  CHECK_THROWS_AS(bruhat_leq(SignedPerm::identity(CoxeterType::BC, 2),
                             SignedPerm::identity(CoxeterType::D, 2)),
                  std::invalid_argument);
}

TEST_CASE("longest elements have the classical lengths and square to one") {
  for (int r = 1; r <= 4; ++r) {
    const SignedPerm w0 = longest_element(CoxeterType::BC, r, all_generators(CoxeterType::BC, r));
    CHECK(w0.length() == static_cast<long long>(r) * r);
    CHECK((w0 * w0).is_identity());
  }
  for (int r = 2; r <= 4; ++r) {
    const SignedPerm w0 = longest_element(CoxeterType::D, r, all_generators(CoxeterType::D, r));
    CHECK(w0.length() == static_cast<long long>(r) * r - r);
    CHECK((w0 * w0).is_identity());
  }
  // Longest element of the type-A chain inside B_4.
  const SignedPerm w0A = longest_element(CoxeterType::BC, 4, {1, 2, 3});
  CHECK(w0A.length() == 6);
  CHECK(w0A.window() == std::vector<int>{4, 3, 2, 1});
}

TEST_CASE("minimal left-coset representatives") {
  const std::set<int> J{1, 2};  // type A_2 chain inside B_3
  CHECK(parabolic_subgroup_elements(CoxeterType::BC, 3, J).size() == 6);
  const auto group = whole_group(CoxeterType::BC, 3);
  std::set<SignedPerm> reps;
  for (const SignedPerm& w : group) {
    const SignedPerm rep = min_coset_rep_left(w, J);
    CHECK(is_min_coset_rep_left(rep, J));
    reps.insert(rep);
    // The representative stays in the same left coset W_J w.
    bool same_coset = false;
    for (const SignedPerm& y : parabolic_subgroup_elements(CoxeterType::BC, 3, J)) {
      if (y * rep == w) same_coset = true;
    }
    CHECK(same_coset);
    CHECK(rep.length() <= w.length());
  }
  CHECK(reps.size() == 48 / 6);
}

}  // TEST_SUITE
