#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <set>

#include "qdp/anyons.hpp"

using namespace qdp;
using cplx = std::complex<double>;

TEST_CASE("named groups and their invariants") {
  auto d4 = make_group("D4");
  CHECK(d4.size() == 8);
  CHECK(d4.valid());
  // r^4 = s^2 = (sr)^2 = 1 with r = index 1, s = index 4
  int r = 1, s = 4;
  CHECK(d4.order(r) == 4);
  CHECK(d4.order(s) == 2);
  CHECK(d4.order(d4.op(s, r)) == 2);

  auto q8 = make_group("Q8");
  CHECK(q8.size() == 8);
  CHECK(q8.valid());
  int i = 2, j = 4, k = 6, minus = 1;
  CHECK(q8.op(i, i) == minus);
  CHECK(q8.op(i, j) == k);
  CHECK(q8.op(j, i) == q8.op(minus, k));
  CHECK(q8.order(i) == 4);

  auto z4g = make_group("Z2^2");
  CHECK(z4g.size() == 4);
  CHECK(z4g.is_abelian());
  CHECK(product_group(make_group("Z2"), make_group("Z2")).valid());

  CHECK_THROWS_AS(make_group("E8"), UnknownGroup);
  try {
    make_group("E8");
  } catch (const Error& e) {
    CHECK(e.exit_code() == 20);
  }
}

TEST_CASE("character tables: class counts, dims, orthogonality") {
  for (auto name : {"D4", "Q8"}) {
    auto g = make_group(name);
    auto t = character_table(g);
    CHECK(t.num_classes() == 5);
    CHECK(t.num_irreps() == 5);
    std::multiset<int> dims;
    for (int k = 0; k < 5; ++k) dims.insert(t.dim(k));
    CHECK(dims == std::multiset<int>{1, 1, 1, 1, 2});
    int n = g.size();
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        cplx acc = 0.0;
        for (int c = 0; c < 5; ++c)
          acc += double(t.classes[c].size()) * t.chi[a][c] *
                 std::conj(t.chi[b][c]);
        CHECK(std::abs(acc - (a == b ? cplx(n) : cplx(0))) < 1e-12);
      }
    // column orthogonality
    for (int c1 = 0; c1 < 5; ++c1)
      for (int c2 = 0; c2 < 5; ++c2) {
        cplx acc = 0.0;
        for (int a = 0; a < 5; ++a)
          acc += t.chi[a][c1] * std::conj(t.chi[a][c2]);
        double want = c1 == c2 ? double(n) / t.classes[c1].size() : 0.0;
        CHECK(std::abs(acc - want) < 1e-12);
      }
  }
  auto z22 = character_table(make_group("Z2^2"));
  CHECK(z22.num_classes() == 4);
  CHECK(z22.num_irreps() == 4);
  for (int k = 0; k < 4; ++k) CHECK(z22.dim(k) == 1);
}

TEST_CASE("D4 sign irreps carry the named kernels") {
  auto g = make_group("D4");
  auto t = character_table(g);
  auto kernel_labels = [&](const std::string& nm) {
    std::set<std::string> out;
    for (int k = 0; k < t.num_irreps(); ++k)
      if (t.irrep_names[k] == nm)
        for (int e : t.kernel(k)) out.insert(g.labels[e]);
    return out;
  };
  CHECK(kernel_labels("s1") == std::set<std::string>{"1", "r", "r2", "r3"});
  CHECK(kernel_labels("s2") == std::set<std::string>{"1", "r2", "s", "r2s"});
  CHECK(kernel_labels("s3") == std::set<std::string>{"1", "r2", "rs", "r3s"});
}

TEST_CASE("quantum double enumeration") {
  auto d4 = make_group("D4");
  auto a4 = double_anyons(d4);
  CHECK(a4.size() == 22);
  int d1 = 0, d2 = 0, sum = 0;
  for (auto& a : a4) {
    sum += a.dim * a.dim;
    if (a.dim == 1) ++d1;
    if (a.dim == 2) ++d2;
  }
  CHECK(d1 == 8);
  CHECK(d2 == 14);
  CHECK(sum == 64);

  auto z2 = make_group("Z2");
  auto a2 = double_anyons(z2);
  CHECK(a2.size() == 4);
  for (auto& a : a2) CHECK(a.dim == 1);
  // spins 1, 1, 1, -1: vacuum, charge, flux, fermion
  CHECK(std::abs(a2[0].theta - 1.0) < 1e-12);
  CHECK(std::abs(a2[1].theta - 1.0) < 1e-12);
  CHECK(std::abs(a2[2].theta - 1.0) < 1e-12);
  CHECK(std::abs(a2[3].theta + 1.0) < 1e-12);

  auto q8 = make_group("Q8");
  auto aq = double_anyons(q8);
  CHECK(aq.size() == 22);
  int sq = 0;
  for (auto& a : aq) sq += a.dim * a.dim;
  CHECK(sq == 64);
  // the [i], [j], [k] classes have Z4 centralizers
  int z4cents = 0;
  for (auto& a : aq)
    if (a.centralizer.size() == 4) ++z4cents;
  CHECK(z4cents == 12);
}

TEST_CASE("abelian double anyons are bosons") {
  auto g = make_group("D4");
  auto anyons = double_anyons(g);
  int bosons = 0;
  for (auto& a : anyons)
    if (a.dim == 1) {
      CHECK(std::abs(a.theta - 1.0) < 1e-12);
      ++bosons;
    }
  CHECK(bosons == 8);
  CHECK(std::abs(spin(anyons[0]) - 1.0) < 1e-12);
}

TEST_CASE("S-matrix structure") {
  auto g = make_group("D4");
  auto anyons = double_anyons(g);
  auto s = s_matrix(g, anyons);
  int n = s.rows();
  CHECK((s * s.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-9);
  CHECK((s - s.transpose()).norm() < 1e-9);
  for (int a = 0; a < n; ++a)
    CHECK(std::abs(s(0, a) - cplx(anyons[a].dim / 8.0)) < 1e-9);
  // S^2 is a permutation (charge conjugation)
  Eigen::MatrixXcd c = s * s;
  for (int a = 0; a < n; ++a) {
    int ones = 0;
    for (int b = 0; b < n; ++b) {
      double v = std::abs(c(a, b));
      CHECK((v < 1e-9 || std::abs(v - 1.0) < 1e-9));
      if (v > 0.5) ++ones;
    }
    CHECK(ones == 1);
  }
}

TEST_CASE("toric code double D(Z2) S-matrix oracle") {
  auto g = make_group("Z2");
  auto anyons = double_anyons(g);
  auto s = s_matrix(g, anyons);
  // rows/cols ordered 1, e, m, f
  double want[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1},
                       {1, -1, -1, 1}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(std::abs(s(a, b) - cplx(want[a][b] / 2.0)) < 1e-12);
  // e x m = f, f x f = 1
  auto em = fusion(s, 1, 2);
  CHECK(em == std::vector<int>{0, 0, 0, 1});
  auto ff = fusion(s, 3, 3);
  CHECK(ff == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("Verlinde fusion is integral and consistent") {
  auto g = make_group("D4");
  auto anyons = double_anyons(g);
  auto s = s_matrix(g, anyons);
  int n = anyons.size();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      auto nab = fusion(s, a, b);
      int dsum = 0;
      for (int c = 0; c < n; ++c) dsum += nab[c] * anyons[c].dim;
      CHECK(dsum == anyons[a].dim * anyons[b].dim);
    }
  // 2 x s3 = 2 as anyons of the double: ([1],2) fused with ([1],s3)
  int two = -1, s3 = -1;
  for (int i = 0; i < n; ++i) {
    if (anyons[i].name == "([1],2)") two = i;
    if (anyons[i].name == "([1],s3)") s3 = i;
  }
  REQUIRE(two >= 0);
  REQUIRE(s3 >= 0);
  auto f = fusion(s, two, s3);
  for (int c = 0; c < n; ++c) CHECK(f[c] == (c == two ? 1 : 0));
}

TEST_CASE("Lagrangian subgroup of D(D4)") {
  auto g = make_group("D4");
  auto anyons = double_anyons(g);
  auto s = s_matrix(g, anyons);
  // the eight abelian anyons: classes [1] and [r2] with sign irreps
  std::vector<int> subset;
  for (size_t i = 0; i < anyons.size(); ++i)
    if (anyons[i].dim == 1) subset.push_back(i);
  CHECK(subset.size() == 8);
  auto rep = is_lagrangian(g, anyons, s, subset);
  CHECK(rep.ok);
  CHECK(rep.failure.empty());

  auto only_vac = is_lagrangian(g, anyons, s, {0});
  CHECK(!only_vac.ok);
  CHECK(only_vac.failure.find("not maximal") != std::string::npos);

  std::vector<int> with2 = subset;
  for (size_t i = 0; i < anyons.size(); ++i)
    if (anyons[i].dim == 2) { with2.push_back(i); break; }
  CHECK(!is_lagrangian(g, anyons, s, with2).ok);

  // toric code: {1, e} is Lagrangian
  auto z2 = make_group("Z2");
  auto a2 = double_anyons(z2);
  auto s2 = s_matrix(z2, a2);
  CHECK(is_lagrangian(z2, a2, s2, {0, 1}).ok);
  CHECK(!is_lagrangian(z2, a2, s2, {0, 3}).ok);  // fermion member
}

TEST_CASE("published correspondence rows") {
  auto rep = table1_check();
  CHECK(rep.ok);
  CHECK(rep.lines.size() == 15);
  for (auto& l : rep.lines)
    CHECK(l.find("ok") != std::string::npos);
}

TEST_CASE("anyon JSON export") {
  auto g = make_group("Z2");
  auto anyons = double_anyons(g);
  auto j = anyons_json(g, anyons);
  CHECK(j["count"] == 4);
  CHECK(j["total_quantum_dim_sq"] == 4);
  CHECK(j["anyons"].size() == 4);
}
