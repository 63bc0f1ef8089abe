#include "qdp/anyons.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace qdp {

namespace {

constexpr double kTol = 1e-9;

bool near(std::complex<double> a, std::complex<double> b,
          double tol = kTol) {
  return std::abs(a - b) < tol;
}

}  // namespace

int FiniteGroup::inv(int a) const {
  for (int b = 0; b < size(); ++b)
    if (mul[a][b] == identity) return b;
  throw UnknownGroup("element without inverse in " + name);
}

int FiniteGroup::order(int a) const {
  int x = a, n = 1;
  while (x != identity) {
    x = mul[x][a];
    ++n;
  }
  return n;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b)
      if (mul[a][b] != mul[b][a]) return false;
  return true;
}

bool FiniteGroup::valid() const {
  int n = size();
  if (static_cast<int>(mul.size()) != n) return false;
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      if (mul[a][b] < 0 || mul[a][b] >= n) return false;
      row[mul[a][b]] = true;
      col[mul[b][a]] = true;
    }
    for (int b = 0; b < n; ++b)
      if (!row[b] || !col[b]) return false;
    if (mul[identity][a] != a || mul[a][identity] != a) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) return false;
  return true;
}

FiniteGroup make_group(const std::string& name) {
  FiniteGroup g;
  g.name = name;
  if (name == "D4") {
    // elements r^a s^b, index a + 4b; s r = r^-1 s
    g.labels = {"1", "r", "r2", "r3", "s", "rs", "r2s", "r3s"};
    g.mul.assign(8, std::vector<int>(8, 0));
    auto idx = [](int a, int b) { return ((a % 4) + 4) % 4 + 4 * (b % 2); };
    for (int a1 = 0; a1 < 4; ++a1)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int a2 = 0; a2 < 4; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            g.mul[idx(a1, b1)][idx(a2, b2)] =
                idx(a1 + (b1 ? -a2 : a2), b1 + b2);
    return g;
  }
  if (name == "Q8") {
    // 1, -1, i, -i, j, -j, k, -k as (unit u, sign s) with u in {1,i,j,k}
    g.labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    g.mul.assign(8, std::vector<int>(8, 0));
    // unit products: table[u][v] = (unit, sign)
    static const int uprod[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int usign[4][4] = {
        {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    // usign: i*i=-1, i*j=k, i*k=-j, j*i=-k, j*j=-1, j*k=i, k*i=j,
    // k*j=-i, k*k=-1
    auto idx = [](int u, int s) { return u == 0 ? s : 2 * u + s; };
    for (int u1 = 0; u1 < 4; ++u1)
      for (int s1 = 0; s1 < 2; ++s1)
        for (int u2 = 0; u2 < 4; ++u2)
          for (int s2 = 0; s2 < 2; ++s2)
            g.mul[idx(u1, s1)][idx(u2, s2)] =
                idx(uprod[u1][u2], (s1 + s2 + usign[u1][u2]) % 2);
    return g;
  }
  if (name == "Z2" || name == "Z2^1" || name == "Z2^2" || name == "Z2^3" ||
      name == "Z2^4") {
    int n = name == "Z2" ? 1 : name[3] - '0';
    int sz = 1 << n;
    g.labels.resize(sz);
    for (int a = 0; a < sz; ++a) {
      std::string l = "(";
      for (int b = 0; b < n; ++b)
        l += ((a >> b) & 1) ? "x" : "1";
      g.labels[a] = l + ")";
    }
    g.mul.assign(sz, std::vector<int>(sz, 0));
    for (int a = 0; a < sz; ++a)
      for (int b = 0; b < sz; ++b)
        g.mul[a][b] = a ^ b;
    return g;
  }
  throw UnknownGroup("unknown group name: " + name);
}

FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.name = "(" + a.name + "x" + b.name + ")";
  int na = a.size(), nb = b.size();
  g.labels.resize(na * nb);
  g.mul.assign(na * nb, std::vector<int>(na * nb, 0));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      g.labels[i * nb + j] = "(" + a.labels[i] + "," + b.labels[j] + ")";
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l)
          g.mul[i * nb + j][k * nb + l] = a.mul[i][k] * nb + b.mul[j][l];
    }
  g.identity = a.identity * nb + b.identity;
  return g;
}

FiniteGroup subgroup(const FiniteGroup& g, const std::vector<int>& elems) {
  FiniteGroup h;
  h.name = g.name + "-sub";
  std::map<int, int> back;
  for (size_t i = 0; i < elems.size(); ++i) back[elems[i]] = i;
  h.labels.resize(elems.size());
  h.mul.assign(elems.size(), std::vector<int>(elems.size(), 0));
  for (size_t i = 0; i < elems.size(); ++i) {
    h.labels[i] = g.labels[elems[i]];
    if (elems[i] == g.identity) h.identity = i;
    for (size_t j = 0; j < elems.size(); ++j) {
      auto it = back.find(g.mul[elems[i]][elems[j]]);
      if (it == back.end())
        throw UnknownGroup("subset not closed under multiplication");
      h.mul[i][j] = it->second;
    }
  }
  return h;
}

std::vector<int> CharacterTable::kernel(int irrep) const {
  std::vector<int> ker;
  for (size_t e = 0; e < class_of.size(); ++e)
    if (near(value(irrep, e), 1.0)) ker.push_back(e);
  return ker;
}

namespace {

// all 1-dim characters: homomorphisms G -> C^* found by assigning roots of
// unity to a generating set and propagating products
std::vector<std::vector<std::complex<double>>> linear_characters(
    const FiniteGroup& g) {
  int n = g.size();
  std::vector<int> gens;
  {
    std::set<int> span{g.identity};
    for (int e = 0; e < n && static_cast<int>(span.size()) < n; ++e) {
      if (span.count(e)) continue;
      gens.push_back(e);
      std::vector<int> frontier(span.begin(), span.end());
      frontier.push_back(e);
      std::set<int> next{frontier.begin(), frontier.end()};
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<int> cur(next.begin(), next.end());
        for (int x : cur)
          for (int y : cur)
            if (next.insert(g.mul[x][y]).second) grew = true;
      }
      span = next;
    }
  }
  std::vector<std::vector<std::complex<double>>> out;
  const double pi2 = 2.0 * std::acos(-1.0);
  std::vector<int> ords;
  for (int e : gens) ords.push_back(g.order(e));
  std::vector<int> pick(gens.size(), 0);
  while (true) {
    // propagate from generator assignment
    std::vector<std::complex<double>> chi(n, 0.0);
    std::vector<bool> known(n, false);
    chi[g.identity] = 1.0;
    known[g.identity] = true;
    for (size_t k = 0; k < gens.size(); ++k) {
      double ang = pi2 * pick[k] / ords[k];
      chi[gens[k]] = {std::cos(ang), std::sin(ang)};
      known[gens[k]] = true;
    }
    bool ok = true, grew = true;
    while (grew && ok) {
      grew = false;
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b) {
          if (!known[a] || !known[b]) continue;
          int c = g.mul[a][b];
          std::complex<double> v = chi[a] * chi[b];
          if (!known[c]) {
            chi[c] = v;
            known[c] = true;
            grew = true;
          } else if (!near(chi[c], v, 1e-6)) {
            ok = false;
          }
        }
    }
    for (int e = 0; e < n; ++e) ok = ok && known[e];
    if (ok) {
      bool dup = false;
      for (auto& prev : out) {
        bool same = true;
        for (int e = 0; e < n; ++e) same = same && near(prev[e], chi[e], 1e-6);
        dup = dup || same;
      }
      if (!dup) {
        // snap to exact Gaussian integers / roots
        for (auto& v : chi)
          v = {std::round(v.real() * 2) / 2, std::round(v.imag() * 2) / 2};
        out.push_back(chi);
      }
    }
    // next assignment
    size_t k = 0;
    while (k < pick.size() && ++pick[k] == ords[k]) pick[k++] = 0;
    if (k == pick.size()) break;
    if (pick.empty()) break;
  }
  return out;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& g) {
  int n = g.size();
  CharacterTable t;
  t.class_of.assign(n, -1);
  for (int e = 0; e < n; ++e) {
    if (t.class_of[e] >= 0) continue;
    std::set<int> cls;
    for (int x = 0; x < n; ++x)
      cls.insert(g.mul[g.mul[x][e]][g.inv(x)]);
    int ci = t.num_classes();
    t.classes.emplace_back(cls.begin(), cls.end());
    for (int m : cls) t.class_of[m] = ci;
  }
  // identity class first, then by lowest representative
  std::sort(t.classes.begin(), t.classes.end());
  for (int c = 0; c < t.num_classes(); ++c)
    for (int m : t.classes[c]) t.class_of[m] = c;

  auto lin = linear_characters(g);
  for (auto& chi : lin) {
    std::vector<std::complex<double>> row(t.num_classes());
    for (int c = 0; c < t.num_classes(); ++c)
      row[c] = chi[t.classes[c][0]];
    t.chi.push_back(row);
    t.irrep_names.push_back("chi" + std::to_string(t.num_irreps() - 1));
  }
  int rem = n - static_cast<int>(lin.size());
  if (rem > 0) {
    // single remaining irrep from the regular character
    int d = static_cast<int>(std::lround(std::sqrt(double(rem))));
    if (d * d != rem)
      throw UnknownGroup("unsupported character table structure for " +
                         g.name);
    std::vector<std::complex<double>> row(t.num_classes());
    for (int c = 0; c < t.num_classes(); ++c) {
      std::complex<double> reg =
          t.classes[c][0] == g.identity ? double(n) : 0.0;
      std::complex<double> s = 0.0;
      for (auto& lc : lin) s += lc[t.classes[c][0]];
      row[c] = (reg - s) / double(d);
    }
    t.chi.push_back(row);
    t.irrep_names.push_back("chi" + std::to_string(t.num_irreps() - 1));
  }
  // put trivial irrep first, sort rest by dimension then values
  std::vector<int> perm(t.num_irreps());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    bool ta = true, tb = true;
    for (int c = 0; c < t.num_classes(); ++c) {
      ta = ta && near(t.chi[a][c], 1.0);
      tb = tb && near(t.chi[b][c], 1.0);
    }
    if (ta != tb) return ta;
    return t.dim(a) < t.dim(b);
  });
  std::vector<std::vector<std::complex<double>>> chi2;
  for (int k : perm) chi2.push_back(t.chi[k]);
  t.chi = chi2;
  for (int k = 0; k < t.num_irreps(); ++k)
    t.irrep_names[k] = "chi" + std::to_string(k);

  // D4 conventional names from the sign-irrep kernels
  if (g.name == "D4") {
    auto match = [&](int irrep, std::vector<std::string> want) {
      if (t.dim(irrep) != 1) return false;
      auto ker = t.kernel(irrep);
      std::set<std::string> have;
      for (int e : ker) have.insert(g.labels[e]);
      return have == std::set<std::string>(want.begin(), want.end());
    };
    for (int k = 0; k < t.num_irreps(); ++k) {
      if (t.dim(k) == 2) t.irrep_names[k] = "2";
      else if (match(k, {"1", "r", "r2", "r3"})) t.irrep_names[k] = "s1";
      else if (match(k, {"1", "r2", "s", "r2s"})) t.irrep_names[k] = "s2";
      else if (match(k, {"1", "r2", "rs", "r3s"})) t.irrep_names[k] = "s3";
      else if (match(k, {"1", "r", "r2", "r3", "s", "rs", "r2s", "r3s"}))
        t.irrep_names[k] = "1";
    }
  }
  // verify row orthogonality
  for (int a = 0; a < t.num_irreps(); ++a)
    for (int b = 0; b < t.num_irreps(); ++b) {
      std::complex<double> s = 0.0;
      for (int c = 0; c < t.num_classes(); ++c)
        s += double(t.classes[c].size()) * t.chi[a][c] *
             std::conj(t.chi[b][c]);
      if (!near(s, a == b ? double(n) : 0.0, 1e-9))
        throw UnknownGroup("character orthogonality failed for " + g.name);
    }
  return t;
}

std::vector<AnyonLabel> double_anyons(const FiniteGroup& g) {
  auto t = character_table(g);
  std::vector<AnyonLabel> out;
  for (int c = 0; c < t.num_classes(); ++c) {
    int rep = t.classes[c][0];
    std::vector<int> cent;
    for (int x = 0; x < g.size(); ++x)
      if (g.mul[x][rep] == g.mul[rep][x]) cent.push_back(x);
    auto h = subgroup(g, cent);
    CharacterTable ht;
    if (static_cast<int>(cent.size()) == g.size())
      ht = t;  // centralizer is the whole group
    else
      ht = character_table(h);
    int hrep = 0;
    for (size_t i = 0; i < cent.size(); ++i)
      if (cent[i] == rep) hrep = i;
    for (int ir = 0; ir < ht.num_irreps(); ++ir) {
      AnyonLabel a;
      a.class_index = c;
      a.rep = rep;
      a.centralizer = cent;
      a.irrep = ir;
      a.dim = static_cast<int>(t.classes[c].size()) * ht.dim(ir);
      if (static_cast<int>(cent.size()) == g.size())
        a.theta = ht.value(ir, rep) / double(ht.dim(ir));
      else
        a.theta = ht.value(ir, hrep) / double(ht.dim(ir));
      a.name = "([" + g.labels[rep] + "]," + ht.irrep_names[ir] + ")";
      a.chi_parent.assign(g.size(), 0.0);
      for (size_t i = 0; i < cent.size(); ++i)
        a.chi_parent[cent[i]] =
            static_cast<int>(cent.size()) == g.size()
                ? ht.value(ir, cent[i])
                : ht.value(ir, static_cast<int>(i));
      out.push_back(a);
    }
  }
  return out;
}

Eigen::MatrixXcd s_matrix(const FiniteGroup& g,
                          const std::vector<AnyonLabel>& anyons) {
  int n = static_cast<int>(anyons.size());
  Eigen::MatrixXcd s(n, n);
  for (int ai = 0; ai < n; ++ai)
    for (int bi = 0; bi < n; ++bi) {
      int a = anyons[ai].rep, b = anyons[bi].rep;
      std::complex<double> acc = 0.0;
      for (int x = 0; x < g.size(); ++x) {
        int h = g.mul[g.mul[x][b]][g.inv(x)];     // x b x^-1
        if (g.mul[a][h] != g.mul[h][a]) continue;  // must commute with a
        int k = g.mul[g.mul[g.inv(x)][a]][x];      // x^-1 a x
        acc += std::conj(anyons[ai].chi_parent[h]) *
               std::conj(anyons[bi].chi_parent[k]);
      }
      s(ai, bi) = acc / double(anyons[ai].centralizer.size() *
                              anyons[bi].centralizer.size());
    }
  return s;
}

std::vector<int> fusion(const Eigen::MatrixXcd& s, int a, int b) {
  int n = static_cast<int>(s.rows());
  std::vector<int> out(n, 0);
  for (int c = 0; c < n; ++c) {
    std::complex<double> acc = 0.0;
    for (int x = 0; x < n; ++x)
      acc += s(a, x) * s(b, x) * std::conj(s(c, x)) / s(0, x);
    double v = acc.real();
    long r = std::lround(v);
    if (std::abs(acc.imag()) > kTol || std::abs(v - double(r)) > kTol ||
        r < 0)
      throw NonIntegerFusion("fusion coefficient " + std::to_string(v) +
                             " is not a nonnegative integer");
    out[c] = static_cast<int>(r);
  }
  return out;
}

LagrangianReport is_lagrangian(const FiniteGroup& g,
                               const std::vector<AnyonLabel>& anyons,
                               const Eigen::MatrixXcd& s,
                               const std::vector<int>& subset) {
  LagrangianReport r;
  std::set<int> in(subset.begin(), subset.end());
  std::complex<double> s00 = s(0, 0);
  auto trivial_braid = [&](int a, int b) {
    // monodromy is trivial iff S_ab = d_a d_b S_00
    return near(s(a, b), double(anyons[a].dim) * double(anyons[b].dim) * s00);
  };
  for (int a : subset) {
    if (anyons[a].dim != 1) {
      r.failure = "non-abelian member " + anyons[a].name;
      return r;
    }
    if (!near(anyons[a].theta, 1.0)) {
      r.failure = "non-bosonic member " + anyons[a].name;
      return r;
    }
  }
  for (int a : subset)
    for (int b : subset)
      if (!trivial_braid(a, b)) {
        r.failure = "nontrivial mutual braiding " + anyons[a].name + " with " +
                    anyons[b].name;
        return r;
      }
  for (int a : subset)
    for (int b : subset) {
      auto nab = fusion(s, a, b);
      for (size_t c = 0; c < nab.size(); ++c)
        if (nab[c] > 0 && !in.count(c)) {
          r.failure = "not closed under fusion: " + anyons[a].name + " x " +
                      anyons[b].name + " contains " + anyons[c].name;
          return r;
        }
    }
  for (size_t c = 0; c < anyons.size(); ++c) {
    if (in.count(c)) continue;
    bool detected = false;
    for (int a : subset) detected = detected || !trivial_braid(a, c);
    if (!detected) {
      r.failure = "not maximal: " + anyons[c].name +
                  " braids trivially with every member";
      return r;
    }
  }
  r.ok = true;
  return r;
}

Table1Report table1_check() {
  Table1Report rep;
  auto g = make_group("D4");
  auto t = character_table(g);
  auto anyons = double_anyons(g);
  auto find = [&](const std::string& cls, const std::string& irrep) {
    for (size_t i = 0; i < anyons.size(); ++i)
      if (anyons[i].name == "([" + cls + "]," + irrep + ")") return (int)i;
    return -1;
  };
  bool ok = true;
  auto row = [&](const std::string& cls, const std::string& irrep,
                 int dim) {
    int i = find(cls, irrep);
    bool good = i >= 0 && anyons[i].dim == dim;
    ok = ok && good;
    rep.lines.push_back("row ([" + cls + "]," + irrep + ") dim " +
                        std::to_string(dim) + ": " +
                        (good ? "ok" : "MISSING/WRONG"));
  };
  // the ten printed correspondence rows
  for (auto ir : {"1", "s1", "s2", "s3"}) row("1", ir, 1);
  for (auto ir : {"1", "s1", "s2", "s3"}) row("r2", ir, 1);
  row("1", "2", 2);
  row("rs", "chi0", 2);  // [rs] with trivial irrep of its Z2^2 centralizer
  // sign-irrep kernels
  auto kercheck = [&](const std::string& nm,
                      std::set<std::string> want) {
    for (int k = 0; k < t.num_irreps(); ++k)
      if (t.irrep_names[k] == nm) {
        std::set<std::string> have;
        for (int e : t.kernel(k)) have.insert(g.labels[e]);
        bool good = have == want;
        ok = ok && good;
        rep.lines.push_back("kernel of " + nm + ": " +
                            (good ? "ok" : "WRONG"));
        return;
      }
    ok = false;
    rep.lines.push_back("irrep " + nm + " missing");
  };
  kercheck("s1", {"1", "r", "r2", "r3"});
  kercheck("s2", {"1", "r2", "s", "r2s"});
  kercheck("s3", {"1", "r2", "rs", "r3s"});
  // [rs] centralizer has order 4 (Z2^2 row)
  {
    int i = find("rs", "chi0");
    bool good = i >= 0 && anyons[i].centralizer.size() == 4;
    ok = ok && good;
    rep.lines.push_back(std::string("[rs] centralizer order 4: ") +
                        (good ? "ok" : "WRONG"));
  }
  // boson claim for ([r2], s3)
  {
    int i = find("r2", "s3");
    bool good = i >= 0 && near(anyons[i].theta, 1.0);
    ok = ok && good;
    rep.lines.push_back(std::string("([r2],s3) is a boson: ") +
                        (good ? "ok" : "WRONG"));
  }
  rep.ok = ok;
  return rep;
}

nlohmann::json to_json(const AnyonLabel& a) {
  return {{"name", a.name},
          {"class_index", a.class_index},
          {"class_rep", a.rep},
          {"irrep", a.irrep},
          {"dim", a.dim},
          {"theta", {a.theta.real(), a.theta.imag()}}};
}

nlohmann::json anyons_json(const FiniteGroup& g,
                           const std::vector<AnyonLabel>& anyons) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& a : anyons) arr.push_back(to_json(a));
  int sum = 0;
  for (auto& a : anyons) sum += a.dim * a.dim;
  return {{"group", g.name},
          {"order", g.size()},
          {"count", anyons.size()},
          {"total_quantum_dim_sq", sum},
          {"anyons", arr}};
}

}  // namespace qdp
