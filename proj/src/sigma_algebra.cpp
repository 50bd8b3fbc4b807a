#include "qsquare/sigma_algebra.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

namespace qsq {

namespace {

const cplx kI(0.0, 1.0);

// (sign, factor) with labels sorted ascending
std::pair<double, SigmaFactor> mk2(int n, int m) {
  if (n == m || n < 1 || m < 1)
    throw Error(ErrorCode::invalid_argument, "scalar product needs two distinct qubits");
  if (n > m) std::swap(n, m);
  return {1.0, SigmaFactor{n, m, 0}};
}

std::pair<double, SigmaFactor> mk3(int n, int m, int l) {
  if (n == m || n == l || m == l || n < 1 || m < 1 || l < 1)
    throw Error(ErrorCode::invalid_argument, "triple product needs three distinct qubits");
  double sign = 1.0;
  if (n > m) { std::swap(n, m); sign = -sign; }
  if (m > l) { std::swap(m, l); sign = -sign; }
  if (n > m) { std::swap(n, m); sign = -sign; }
  return {sign, SigmaFactor{n, m, l}};
}

// parity of the permutation taking the stored ascending triple t to (p,q,r)
double perm_sign(const SigmaFactor& t, int p, int q, int r) {
  if (p == t.a && q == t.b && r == t.c) return 1.0;
  if (p == t.b && q == t.c && r == t.a) return 1.0;
  if (p == t.c && q == t.a && r == t.b) return 1.0;
  if (p == t.a && q == t.c && r == t.b) return -1.0;
  if (p == t.b && q == t.a && r == t.c) return -1.0;
  if (p == t.c && q == t.b && r == t.a) return -1.0;
  throw Error(ErrorCode::unsupported_pattern, "perm_sign: labels do not match");
}

int third_label(const SigmaFactor& t, int u, int v) {
  if (t.a != u && t.a != v) return t.a;
  if (t.b != u && t.b != v) return t.b;
  return t.c;
}

struct RuleTerm {
  cplx coef;
  std::vector<SigmaFactor> factors;  // pairwise disjoint
};

void push(std::vector<RuleTerm>& out, cplx coef,
          std::initializer_list<std::pair<double, SigmaFactor>> fs) {
  RuleTerm t;
  t.coef = coef;
  for (const auto& [s, f] : fs) {
    t.coef *= s;
    t.factors.push_back(f);
  }
  out.push_back(std::move(t));
}

// Product of two overlapping canonical factors, reduced to monomials whose
// new factors are pairwise disjoint. Convolution identities for scalar and
// triple products of sigma matrices, dense-verified in the test suite.
std::vector<RuleTerm> rewrite_pair(const SigmaFactor& x, const SigmaFactor& y) {
  std::vector<RuleTerm> out;

  if (!x.is_triple() && !y.is_triple()) {
    if (x.a == y.a && x.b == y.b) {
      // (ss)^2 = 3 - 2(ss)
      push(out, 3.0, {});
      push(out, -2.0, {mk2(x.a, x.b)});
      return out;
    }
    // shared one qubit s: (s_a s_s)(s_s s_c) = -i(s_a s_s s_c) + (s_a s_c)
    int s = (x.a == y.a || x.a == y.b) ? x.a : x.b;
    int a = (x.a == s) ? x.b : x.a;
    int c = (y.a == s) ? y.b : y.a;
    push(out, -kI, {mk3(a, s, c)});
    push(out, 1.0, {mk2(a, c)});
    return out;
  }

  if (!x.is_triple() && y.is_triple()) {
    int ov = x.overlap(y);
    if (ov == 2) {
      // scalar support {u,v} inside the triple; bring it to the front:
      // (s_u s_v)(s_u s_v s_t) = -(s_u s_v s_t) - 2i(s_u s_t) + 2i(s_v s_t)
      int u = x.a, v = x.b;
      int t = third_label(y, u, v);
      double s = perm_sign(y, u, v, t);
      push(out, -s, {mk3(u, v, t)});
      push(out, -2.0 * kI * s, {mk2(u, t)});
      push(out, 2.0 * kI * s, {mk2(v, t)});
      return out;
    }
    // one shared qubit s:
    // (s_a s_s)(s_s s_c s_d) = (s_a s_c s_d) - i(s_a s_c)(s_s s_d) + i(s_a s_d)(s_s s_c)
    int s = (x.a == y.a || x.a == y.b || x.a == y.c) ? x.a : x.b;
    int a = (x.a == s) ? x.b : x.a;
    std::array<int, 2> rest{};
    int k = 0;
    for (int l : {y.a, y.b, y.c})
      if (l != s) rest[k++] = l;
    int c = rest[0], d = rest[1];
    double sg = perm_sign(y, s, c, d);
    push(out, sg, {mk3(a, c, d)});
    push(out, -kI * sg, {mk2(a, c), mk2(s, d)});
    push(out, kI * sg, {mk2(a, d), mk2(s, c)});
    return out;
  }

  if (x.is_triple() && !y.is_triple()) {
    int ov = x.overlap(y);
    if (ov == 2) {
      // (s_u s_v s_t)(s_u s_v) = -(s_u s_v s_t) + 2i(s_u s_t) - 2i(s_v s_t)
      int u = y.a, v = y.b;
      int t = third_label(x, u, v);
      double s = perm_sign(x, u, v, t);
      push(out, -s, {mk3(u, v, t)});
      push(out, 2.0 * kI * s, {mk2(u, t)});
      push(out, -2.0 * kI * s, {mk2(v, t)});
      return out;
    }
    // (s_s s_c s_d)(s_a s_s) = (s_a s_c s_d) + i(s_a s_c)(s_s s_d) - i(s_a s_d)(s_s s_c)
    int s = (y.a == x.a || y.a == x.b || y.a == x.c) ? y.a : y.b;
    int a = (y.a == s) ? y.b : y.a;
    std::array<int, 2> rest{};
    int k = 0;
    for (int l : {x.a, x.b, x.c})
      if (l != s) rest[k++] = l;
    int c = rest[0], d = rest[1];
    double sg = perm_sign(x, s, c, d);
    push(out, sg, {mk3(a, c, d)});
    push(out, kI * sg, {mk2(a, c), mk2(s, d)});
    push(out, -kI * sg, {mk2(a, d), mk2(s, c)});
    return out;
  }

  // triple * triple
  int ov = x.overlap(y);
  if (ov == 3) {
    // (sss)^2 = 6 - 2(s_a s_b) - 2(s_a s_c) - 2(s_b s_c)
    push(out, 6.0, {});
    push(out, -2.0, {mk2(x.a, x.b)});
    push(out, -2.0, {mk2(x.a, x.c)});
    push(out, -2.0, {mk2(x.b, x.c)});
    return out;
  }
  if (ov == 2) {
    // shared {a,b}: (s_a s_b s_u)(s_a s_b s_v) =
    //   i(s_a s_u s_v) + i(s_b s_u s_v) - (s_a s_u)(s_b s_v) - (s_a s_v)(s_b s_u) + 2(s_u s_v)
    std::array<int, 2> shared{};
    int k = 0;
    for (int l : {x.a, x.b, x.c})
      if (l == y.a || l == y.b || l == y.c) shared[k++] = l;
    int a = shared[0], b = shared[1];
    int u = third_label(x, a, b);
    int v = third_label(y, a, b);
    double sg = perm_sign(x, a, b, u) * perm_sign(y, a, b, v);
    push(out, kI * sg, {mk3(a, u, v)});
    push(out, kI * sg, {mk3(b, u, v)});
    push(out, -sg, {mk2(a, u), mk2(b, v)});
    push(out, -sg, {mk2(a, v), mk2(b, u)});
    push(out, 2.0 * sg, {mk2(u, v)});
    return out;
  }
  // shared one qubit s: (s_s s_a s_b)(s_s s_c s_d) =
  //   -i(s_s s_a)(s_b s_c s_d) + i(s_s s_b)(s_a s_c s_d)
  //   + (s_a s_c)(s_b s_d) - (s_a s_d)(s_b s_c)
  int s = 0;
  for (int l : {x.a, x.b, x.c})
    if (l == y.a || l == y.b || l == y.c) s = l;
  std::array<int, 2> rx{}, ry{};
  int kx = 0, ky = 0;
  for (int l : {x.a, x.b, x.c})
    if (l != s) rx[kx++] = l;
  for (int l : {y.a, y.b, y.c})
    if (l != s) ry[ky++] = l;
  int a = rx[0], b = rx[1], c = ry[0], d = ry[1];
  double sg = perm_sign(x, s, a, b) * perm_sign(y, s, c, d);
  push(out, -kI * sg, {mk2(s, a), mk3(b, c, d)});
  push(out, kI * sg, {mk2(s, b), mk3(a, c, d)});
  push(out, sg, {mk2(a, c), mk2(b, d)});
  push(out, -sg, {mk2(a, d), mk2(b, c)});
  return out;
}

long overlap_measure(const std::vector<SigmaFactor>& fs) {
  long m = 0;
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = i + 1; j < fs.size(); ++j) m += fs[i].overlap(fs[j]);
  return m;
}

// Reduce a raw product of canonical factors to canonical monomials,
// accumulating coef-weighted terms into out. parent_measure guards the
// termination argument: every rewrite must shrink (overlap, count).
void reduce_into(std::vector<SigmaFactor> fs, cplx coef, SigmaExpr& out,
                 long parent_overlap, long parent_count) {
  long ov = overlap_measure(fs);
  long cnt = static_cast<long>(fs.size());
  if (parent_overlap >= 0 &&
      !(ov < parent_overlap || (ov == parent_overlap && cnt < parent_count)))
    throw Error(ErrorCode::unsupported_pattern,
                "sigma reduction: measure failed to decrease");

  if (ov == 0) {
    std::sort(fs.begin(), fs.end());  // disjoint factors commute
    out.add_term(std::move(fs), coef);
    return;
  }

  // leftmost factor overlapping a later one; everything in between is
  // disjoint from it, so it commutes rightward until adjacent
  size_t p = 0, q = 0;
  bool found = false;
  for (p = 0; p < fs.size() && !found; ++p)
    for (q = p + 1; q < fs.size(); ++q)
      if (fs[p].overlap(fs[q]) > 0) { found = true; break; }
  --p;
  for (size_t t = p; t + 1 < q; ++t) std::swap(fs[t], fs[t + 1]);

  SigmaFactor left = fs[q - 1], right = fs[q];
  std::vector<SigmaFactor> prefix(fs.begin(), fs.begin() + (q - 1));
  std::vector<SigmaFactor> suffix(fs.begin() + (q + 1), fs.end());

  for (const auto& term : rewrite_pair(left, right)) {
    std::vector<SigmaFactor> next = prefix;
    next.insert(next.end(), term.factors.begin(), term.factors.end());
    next.insert(next.end(), suffix.begin(), suffix.end());
    reduce_into(std::move(next), coef * term.coef, out, ov, cnt);
  }
}

std::string format_coef(cplx c) {
  char buf[128];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", c.real());
  } else {
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
  }
  return buf;
}

}  // namespace

int SigmaFactor::overlap(const SigmaFactor& o) const {
  int n = 0;
  for (int l : {a, b, c}) {
    if (l == 0) continue;
    if (l == o.a || l == o.b || l == o.c) ++n;
  }
  return n;
}

SigmaExpr SigmaExpr::one() {
  SigmaExpr e;
  e.terms_[{}] = 1.0;
  return e;
}

SigmaExpr SigmaExpr::scalar_product(int n, int m) {
  auto [s, f] = mk2(n, m);
  SigmaExpr e;
  e.terms_[{f}] = s;
  return e;
}

SigmaExpr SigmaExpr::triple_product(int n, int m, int l) {
  auto [s, f] = mk3(n, m, l);
  SigmaExpr e;
  e.terms_[{f}] = s;
  return e;
}

void SigmaExpr::add_term(SigmaMonomial mono, cplx coef) {
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    if (coef != 0.0) terms_.emplace(std::move(mono), coef);
    return;
  }
  it->second += coef;
  if (std::abs(it->second) < 1e-14) terms_.erase(it);
}

SigmaExpr& SigmaExpr::operator+=(const SigmaExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SigmaExpr& SigmaExpr::operator*=(cplx s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

SigmaExpr SigmaExpr::adjoint() const {
  SigmaExpr out;
  for (const auto& [m, c] : terms_) {
    SigmaMonomial rev(m.rbegin(), m.rend());
    std::sort(rev.begin(), rev.end());  // canonical monomials are disjoint
    out.add_term(std::move(rev), std::conj(c));
  }
  return out;
}

int SigmaExpr::max_label() const {
  int mx = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m) mx = std::max({mx, f.a, f.b, f.c});
  return mx;
}

SigmaExpr multiply(const SigmaExpr& x, const SigmaExpr& y) {
  SigmaExpr out;
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      std::vector<SigmaFactor> fs = mx;
      fs.insert(fs.end(), my.begin(), my.end());
      reduce_into(std::move(fs), cx * cy, out, -1, -1);
    }
  }
  return out;
}

Cmat to_dense(const SigmaExpr& x, int nqubits) {
  if (nqubits < 1 || nqubits > 6)
    throw Error(ErrorCode::resource_limit, "to_dense: nqubits out of range");
  if (x.max_label() > nqubits)
    throw Error(ErrorCode::invalid_argument, "to_dense: qubit label exceeds nqubits");
  const int D = 1 << nqubits;

  auto embed = [&](const std::vector<std::pair<int, int>>& assign) {
    Cmat m = Cmat::Ones(1, 1);
    for (int q = 1; q <= nqubits; ++q) {
      int mu = 0;
      for (const auto& [qq, a] : assign)
        if (qq == q) mu = a;
      m = kron(m, pauli(mu));
    }
    return m;
  };

  auto factor_dense = [&](const SigmaFactor& f) {
    Cmat m = Cmat::Zero(D, D);
    if (!f.is_triple()) {
      for (int al = 1; al <= 3; ++al) m += embed({{f.a, al}, {f.b, al}});
    } else {
      static const int eps[6][4] = {{1, 2, 3, 1},  {2, 3, 1, 1},  {3, 1, 2, 1},
                                    {3, 2, 1, -1}, {1, 3, 2, -1}, {2, 1, 3, -1}};
      for (const auto& e : eps)
        m += static_cast<double>(e[3]) * embed({{f.a, e[0]}, {f.b, e[1]}, {f.c, e[2]}});
    }
    return m;
  };

  Cmat out = Cmat::Zero(D, D);
  for (const auto& [mono, coef] : x.terms()) {
    Cmat m = Cmat::Identity(D, D);
    for (const auto& f : mono) m = m * factor_dense(f);
    out += coef * m;
  }
  return out;
}

double verify_identity(const SigmaExpr& lhs, const SigmaExpr& rhs, int nqubits) {
  return max_abs(to_dense(lhs, nqubits) - to_dense(rhs, nqubits));
}

std::string SigmaExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += format_coef(c);
    if (m.empty()) {
      out += " 1";
    } else {
      for (const auto& f : m) {
        out += " (" + std::to_string(f.a) + " " + std::to_string(f.b);
        if (f.is_triple()) out += " " + std::to_string(f.c);
        out += ")";
      }
    }
  }
  return out;
}

SigmaExpr SigmaExpr::parse(const std::string& text) {
  size_t pos = 0;
  auto fail = [&](const char* msg) {
    throw Error(ErrorCode::parse_error,
                "sigma parse: " + std::string(msg) + " at offset " + std::to_string(pos));
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_number = [&]() -> double {
    size_t end = 0;
    double v = 0;
    try {
      v = std::stod(text.substr(pos), &end);
    } catch (...) {
      fail("expected number");
    }
    pos += end;
    return v;
  };

  SigmaExpr result;
  skip_ws();
  bool first_term = true;
  while (pos < text.size()) {
    double term_sign = 1.0;
    skip_ws();
    if (!first_term) {
      if (text[pos] == '+') {
        ++pos;
      } else if (text[pos] == '-') {
        term_sign = -1.0;
        ++pos;
      } else {
        fail("expected '+' or '-' between terms");
      }
      skip_ws();
    }
    first_term = false;

    // coefficient: "(re+imi)", "re", "rei", "i", "-i", "1" (identity term)
    cplx coef(1.0, 0.0);
    bool have_coef = false;
    if (pos < text.size() && text[pos] == '(') {
      // lookahead: a coefficient paren contains signs/decimal points/'i',
      // a factor paren contains only digits and spaces
      size_t close = text.find(')', pos);
      if (close == std::string::npos) fail("unbalanced parenthesis");
      std::string inner = text.substr(pos + 1, close - pos - 1);
      bool factor_like = !inner.empty() &&
                         inner.find_first_not_of("0123456789 ") == std::string::npos;
      if (!factor_like) {
        ++pos;
        double re = parse_number();
        skip_ws();
        double im = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
          im = parse_number();
          if (pos >= text.size() || text[pos] != 'i') fail("expected 'i'");
          ++pos;
        } else if (pos < text.size() && text[pos] == 'i') {
          im = re;
          re = 0;
          ++pos;
        }
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
        ++pos;
        coef = cplx(re, im);
        have_coef = true;
      }
    } else if (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                text[pos] == 'i' || text[pos] == '-')) {
      if (text[pos] == 'i') {
        coef = kI;
        ++pos;
      } else if (text[pos] == '-' && pos + 1 < text.size() && text[pos + 1] == 'i') {
        coef = -kI;
        pos += 2;
      } else {
        double v = parse_number();
        if (pos < text.size() && text[pos] == 'i') {
          coef = cplx(0, v);
          ++pos;
        } else {
          coef = cplx(v, 0);
        }
      }
      have_coef = true;
    }
    skip_ws();
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      skip_ws();
    }

    // factors
    SigmaExpr term = SigmaExpr::one();
    bool any_factor = false;
    while (pos < text.size() && text[pos] == '(') {
      size_t close = text.find(')', pos);
      if (close == std::string::npos) fail("unbalanced parenthesis");
      std::string inner = text.substr(pos + 1, close - pos - 1);
      if (inner.find_first_not_of("0123456789 ") != std::string::npos) break;
      std::vector<int> labels;
      size_t ip = 0;
      while (ip < inner.size()) {
        while (ip < inner.size() && inner[ip] == ' ') ++ip;
        if (ip >= inner.size()) break;
        size_t e = 0;
        labels.push_back(std::stoi(inner.substr(ip), &e));
        ip += e;
      }
      pos = close + 1;
      skip_ws();
      if (labels.size() == 2)
        term = multiply(term, SigmaExpr::scalar_product(labels[0], labels[1]));
      else if (labels.size() == 3)
        term = multiply(term, SigmaExpr::triple_product(labels[0], labels[1], labels[2]));
      else
        fail("factor must list 2 or 3 qubits");
      any_factor = true;
    }
    if (!any_factor) {
      // bare "1" (or a lone coefficient) stands for the identity term
      if (pos < text.size() && text[pos] == '1' && have_coef) ++pos;
      if (!have_coef) {
        if (pos < text.size() && text[pos] == '1') {
          ++pos;
        } else {
          fail("expected factor or coefficient");
        }
      }
    }
    result += term_sign * coef * term;
    skip_ws();
  }
  return result;
}

namespace {

SigmaExpr raw_product(std::initializer_list<SigmaFactor> fs) {
  SigmaExpr e;
  e.add_term(SigmaMonomial(fs), 1.0);
  return e;
}

SigmaFactor S(int n, int m) { return SigmaFactor{n, m, 0}; }
SigmaFactor T(int n, int m, int l) { return SigmaFactor{n, m, l}; }

SigmaExpr lin(std::initializer_list<std::pair<cplx, SigmaMonomial>> terms) {
  SigmaExpr e;
  for (const auto& [c, m] : terms) e.add_term(m, c);
  return e;
}

}  // namespace

const std::vector<SigmaIdentity>& convolution_identities() {
  static const std::vector<SigmaIdentity> table = [] {
    std::vector<SigmaIdentity> t;
    t.push_back({"q1", raw_product({S(1, 2), S(1, 2)}),
                 lin({{3.0, {}}, {-2.0, {S(1, 2)}}}), 2});
    t.push_back({"q2", raw_product({S(1, 2), S(2, 3)}),
                 lin({{-kI, {T(1, 2, 3)}}, {1.0, {S(1, 3)}}}), 3});
    t.push_back({"q3", raw_product({T(1, 2, 3), T(1, 2, 3)}),
                 lin({{6.0, {}},
                      {-2.0, {S(1, 2)}},
                      {-2.0, {S(1, 3)}},
                      {-2.0, {S(2, 3)}}}),
                 3});
    t.push_back({"q4", raw_product({S(1, 2), T(2, 3, 4)}),
                 lin({{1.0, {T(1, 3, 4)}},
                      {-kI, {S(1, 3), S(2, 4)}},
                      {kI, {S(1, 4), S(2, 3)}}}),
                 4});
    t.push_back({"q4a", raw_product({T(2, 3, 4), S(1, 2)}),
                 lin({{1.0, {T(1, 3, 4)}},
                      {kI, {S(1, 3), S(2, 4)}},
                      {-kI, {S(1, 4), S(2, 3)}}}),
                 4});
    t.push_back({"q5", raw_product({S(1, 2), T(1, 2, 3)}),
                 lin({{-1.0, {T(1, 2, 3)}},
                      {-2.0 * kI, {S(1, 3)}},
                      {2.0 * kI, {S(2, 3)}}}),
                 3});
    t.push_back({"q5a", raw_product({T(1, 2, 3), S(1, 2)}),
                 lin({{-1.0, {T(1, 2, 3)}},
                      {2.0 * kI, {S(1, 3)}},
                      {-2.0 * kI, {S(2, 3)}}}),
                 3});
    t.push_back({"q6", raw_product({T(1, 2, 3), T(1, 2, 4)}),
                 lin({{kI, {T(1, 3, 4)}},
                      {kI, {T(2, 3, 4)}},
                      {-1.0, {S(1, 3), S(2, 4)}},
                      {-1.0, {S(1, 4), S(2, 3)}},
                      {2.0, {S(3, 4)}}}),
                 4});
    t.push_back({"q7", raw_product({T(1, 2, 3), T(1, 4, 5)}),
                 lin({{-kI, {S(1, 2), T(3, 4, 5)}},
                      {kI, {S(1, 3), T(2, 4, 5)}},
                      {1.0, {S(2, 4), S(3, 5)}},
                      {-1.0, {S(2, 5), S(3, 4)}}}),
                 5});
    t.push_back({"q8", raw_product({S(1, 2), S(2, 3), S(3, 4)}),
                 lin({{-kI, {T(1, 2, 4)}},
                      {-kI, {T(1, 3, 4)}},
                      {1.0, {S(1, 4)}},
                      {1.0, {S(1, 4), S(2, 3)}},
                      {-1.0, {S(1, 3), S(2, 4)}}}),
                 4});
    t.push_back({"q9", raw_product({S(1, 2), S(3, 4), S(1, 3), S(2, 4)}),
                 lin({{3.0, {}},
                      {kI, {T(1, 2, 3)}},
                      {-kI, {T(1, 2, 4)}},
                      {kI, {T(1, 3, 4)}},
                      {-kI, {T(2, 3, 4)}},
                      {-2.0, {S(1, 2)}},
                      {-2.0, {S(1, 3)}},
                      {2.0, {S(1, 4)}},
                      {2.0, {S(2, 3)}},
                      {-2.0, {S(2, 4)}},
                      {-2.0, {S(3, 4)}},
                      {1.0, {S(1, 2), S(3, 4)}},
                      {1.0, {S(1, 3), S(2, 4)}}}),
                 4});
    return t;
  }();
  return table;
}

}  // namespace qsq
