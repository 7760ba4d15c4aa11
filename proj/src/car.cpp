#include "nicolai/car.hpp"

#include "nicolai/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace nicolai::car {

namespace {

void check_ascending(const std::vector<Site>& sites, const char* kind) {
  for (std::size_t i = 1; i < sites.size(); ++i) {
    if (sites[i - 1] >= sites[i])
      throw Error(std::string("monomial ") + kind +
                  " sites must be strictly ascending");
  }
}

// A single CAR generator; dagger marks a creation operator.
struct Gen {
  Site site;
  bool dagger;
};

void append_gens(std::vector<Gen>& word, const Monomial& m) {
  for (Site s : m.creations()) word.push_back({s, true});
  for (Site s : m.annihilations()) word.push_back({s, false});
}

// Rewrites a generator word into canonical form and accumulates the result.
// Adjacent-transposition rules:
//   same kind, same site        -> 0                     (c^2 = 0)
//   same kind, descending sites -> swap, sign flip
//   c_i c*_j, i != j            -> swap, sign flip
//   c_i c*_i                    -> 1 - c*_i c_i          (branches)
// Every swap removes one inversion against the canonical order, so the
// rewriting terminates; branch words are strictly shorter.
void normal_order_into(std::vector<Gen> word0, Scalar coeff0,
                       Polynomial& out) {
  struct Item {
    std::vector<Gen> word;
    Scalar coeff;
  };
  std::vector<Item> todo;
  todo.push_back({std::move(word0), std::move(coeff0)});

  while (!todo.empty()) {
    auto [w, c] = std::move(todo.back());
    todo.pop_back();
    if (c.is_zero()) continue;

    bool vanished = false;
    std::size_t p = 0;
    while (p + 1 < w.size()) {
      Gen& x = w[p];
      Gen& y = w[p + 1];
      if (x.dagger == y.dagger) {
        if (x.site == y.site) {
          vanished = true;
          break;
        }
        if (x.site > y.site) {
          std::swap(x, y);
          c = -c;
          if (p > 0) --p;
        } else {
          ++p;
        }
      } else if (!x.dagger && y.dagger) {
        if (x.site == y.site) {
          // Contracted branch keeps the current coefficient.
          std::vector<Gen> rest;
          rest.reserve(w.size() - 2);
          rest.insert(rest.end(), w.begin(), w.begin() + p);
          rest.insert(rest.end(), w.begin() + p + 2, w.end());
          todo.push_back({std::move(rest), c});
        }
        std::swap(x, y);
        c = -c;
        if (p > 0) --p;
      } else {
        ++p;
      }
    }
    if (vanished) continue;

    std::vector<Site> cre, ann;
    cre.reserve(w.size());
    ann.reserve(w.size());
    for (const Gen& g : w) (g.dagger ? cre : ann).push_back(g.site);
    out.add_term(Monomial(std::move(cre), std::move(ann)), c);
  }
}

Interval merge(Interval a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return Interval::of(std::min(a.left, b.left), std::max(a.right, b.right));
}

}  // namespace

Monomial::Monomial(std::vector<Site> creations, std::vector<Site> annihilations)
    : cre_(std::move(creations)), ann_(std::move(annihilations)) {
  check_ascending(cre_, "creation");
  check_ascending(ann_, "annihilation");
}

Polynomial Polynomial::identity(Scalar c) {
  return term(Monomial{}, std::move(c));
}

Polynomial Polynomial::term(Monomial m, Scalar c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

bool Polynomial::exact() const {
  for (const auto& [m, c] : terms_)
    if (!c.exact()) return false;
  return true;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  TermMap scaled;
  for (const auto& [m, k] : terms_) {
    Scalar v = k * c;
    if (!v.is_zero()) scaled.emplace(m, std::move(v));
  }
  terms_ = std::move(scaled);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  return multiply(a, b);
}

Polynomial annihilator(Site i) {
  return Polynomial::term(Monomial({}, {i}));
}

Polynomial creator(Site i) {
  return Polynomial::term(Monomial({i}, {}));
}

Polynomial number_op(Site i) {
  return Polynomial::term(Monomial({i}, {i}));
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<Gen> word;
      word.reserve(ma.degree() + mb.degree());
      append_gens(word, ma);
      append_gens(word, mb);
      normal_order_into(std::move(word), ca * cb, out);
    }
  }
  return out;
}

Polynomial adjoint(const Polynomial& a) {
  Polynomial out;
  for (const auto& [m, c] : a.terms()) {
    std::vector<Gen> word;
    word.reserve(m.degree());
    for (auto it = m.annihilations().rbegin(); it != m.annihilations().rend();
         ++it)
      word.push_back({*it, true});
    for (auto it = m.creations().rbegin(); it != m.creations().rend(); ++it)
      word.push_back({*it, false});
    normal_order_into(std::move(word), c.conj(), out);
  }
  return out;
}

GradedPair grade_parts(const Polynomial& a) {
  GradedPair parts;
  for (const auto& [m, c] : a.terms())
    (m.parity() == 0 ? parts.even : parts.odd).add_term(m, c);
  return parts;
}

bool is_homogeneous(const Polynomial& a) {
  if (a.is_zero()) return true;
  int p = a.terms().begin()->first.parity();
  for (const auto& [m, c] : a.terms())
    if (m.parity() != p) return false;
  return true;
}

int parity_of(const Polynomial& a) {
  if (a.is_zero()) return 0;
  if (!is_homogeneous(a))
    throw NonHomogeneousArgument("polynomial mixes even and odd grades");
  return a.terms().begin()->first.parity();
}

Polynomial grading(const Polynomial& a) {
  Polynomial out;
  for (const auto& [m, c] : a.terms())
    out.add_term(m, m.parity() == 0 ? c : -c);
  return out;
}

Polynomial graded_commutator(const Polynomial& a, const Polynomial& b) {
  int pa = parity_of(a);
  Polynomial out;
  for (const auto& [ma, ca] : a.terms()) {
    Interval sa = support(ma);
    for (const auto& [mb, cb] : b.terms()) {
      // Graded locality: disjointly supported terms cancel exactly.
      if (sa.disjoint(support(mb))) continue;
      Scalar c = ca * cb;
      std::vector<Gen> ab, ba;
      ab.reserve(ma.degree() + mb.degree());
      ba.reserve(ma.degree() + mb.degree());
      append_gens(ab, ma);
      append_gens(ab, mb);
      append_gens(ba, mb);
      append_gens(ba, ma);
      normal_order_into(std::move(ab), c, out);
      bool both_odd = pa == 1 && mb.parity() == 1;
      normal_order_into(std::move(ba), both_odd ? c : -c, out);
    }
  }
  return out;
}

Polynomial anticommutator(const Polynomial& a, const Polynomial& b) {
  return multiply(a, b) + multiply(b, a);
}

Polynomial commutator(const Polynomial& a, const Polynomial& b) {
  return multiply(a, b) - multiply(b, a);
}

Polynomial shift(const Polynomial& a, int k) {
  // Translation preserves the canonical order, no reordering needed.
  Polynomial out;
  for (const auto& [m, c] : a.terms()) {
    std::vector<Site> cre = m.creations();
    std::vector<Site> ann = m.annihilations();
    for (Site& s : cre) s += k;
    for (Site& s : ann) s += k;
    out.add_term(Monomial(std::move(cre), std::move(ann)), c);
  }
  return out;
}

Polynomial map_sites(const Polynomial& a,
                     const std::function<Site(Site)>& f) {
  Polynomial out;
  for (const auto& [m, c] : a.terms()) {
    std::vector<Gen> word;
    word.reserve(m.degree());
    for (Site s : m.creations()) word.push_back({f(s), true});
    for (Site s : m.annihilations()) word.push_back({f(s), false});
    normal_order_into(std::move(word), c, out);
  }
  return out;
}

Interval support(const Monomial& m) {
  if (m.is_identity()) return Interval::empty();
  Interval iv = Interval::empty();
  auto widen = [&iv](const std::vector<Site>& sites) {
    if (sites.empty()) return;
    iv = merge(iv, Interval::of(sites.front(), sites.back()));
  };
  widen(m.creations());
  widen(m.annihilations());
  return iv;
}

Interval support(const Polynomial& a) {
  if (a.is_zero())
    throw EmptySupport("support of the zero polynomial is undefined");
  Interval iv = Interval::empty();
  for (const auto& [m, c] : a.terms()) iv = merge(iv, support(m));
  return iv;
}

namespace {

std::string monomial_text(const Monomial& m) {
  if (m.is_identity()) return "1";
  std::string s;
  for (Site i : m.creations()) {
    if (!s.empty()) s += ' ';
    s += "c*_{" + std::to_string(i) + "}";
  }
  for (Site i : m.annihilations()) {
    if (!s.empty()) s += ' ';
    s += "c_{" + std::to_string(i) + "}";
  }
  return s;
}

}  // namespace

std::string to_text(const Polynomial& a) {
  if (a.is_zero()) return "0\n";
  std::string out;
  for (const auto& [m, c] : a.terms()) {
    out += c.str();
    out += " * ";
    out += monomial_text(m);
    out += '\n';
  }
  return out;
}

Polynomial parse_polynomial(const std::string& text) {
  Polynomial out;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    // Trim.
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line == "0") continue;

    std::string coeff_token = line;
    std::string gens_part;
    auto star = line.find(" * ");
    if (star != std::string::npos) {
      coeff_token = line.substr(0, star);
      gens_part = line.substr(star + 3);
    }
    Scalar coeff = Scalar::parse(coeff_token);

    std::vector<Gen> word;
    std::istringstream gens(gens_part);
    std::string tok;
    while (gens >> tok) {
      if (tok == "1") continue;
      bool dagger = tok.rfind("c*_{", 0) == 0;
      bool plain = tok.rfind("c_{", 0) == 0;
      if ((!dagger && !plain) || tok.back() != '}')
        throw Error("bad generator token: " + tok);
      std::size_t open = dagger ? 4 : 3;
      Site site = std::stoi(tok.substr(open, tok.size() - open - 1));
      word.push_back({site, dagger});
    }
    normal_order_into(std::move(word), coeff, out);
  }
  return out;
}

bool approx_equal(const Polynomial& a, const Polynomial& b, double tol) {
  Polynomial diff = a - b;
  for (const auto& [m, c] : diff.terms())
    if (std::abs(c.to_complex()) > tol) return false;
  return true;
}

}  // namespace nicolai::car
