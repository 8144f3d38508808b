#include "prolam/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace prolam {

namespace {

std::vector<std::int64_t> identity_table(int q) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(q));
  for (int x = 0; x < q; ++x) t[static_cast<std::size_t>(x)] = x;
  return t;
}

// a then b on transformation tables
std::vector<std::int64_t> table_compose(const std::vector<std::int64_t>& a,
                                        const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    out[x] = b[static_cast<std::size_t>(a[x])];
  return out;
}

void check_letter(const Dfa& d, int letter) {
  if (letter < 0 || letter >= static_cast<int>(d.alphabet.size()))
    throw error("letter index " + std::to_string(letter) +
                " outside the alphabet of " +
                std::to_string(d.alphabet.size()) + " letters");
}

}  // namespace

void validate_dfa(const Dfa& d) {
  if (d.q < 1)
    throw error("a DFA needs at least one state, got " + std::to_string(d.q));
  if (d.delta.size() != d.alphabet.size())
    throw error("got " + std::to_string(d.delta.size()) + " tables for " +
                std::to_string(d.alphabet.size()) + " letters");
  for (std::size_t i = 0; i < d.delta.size(); ++i) {
    const auto& t = d.delta[i];
    if (static_cast<int>(t.size()) != d.q)
      throw error("table for letter '" + d.alphabet[i] + "' has " +
                  std::to_string(t.size()) + " entries, expected " +
                  std::to_string(d.q));
    for (std::int64_t v : t)
      if (v < 0 || v >= d.q)
        throw error("table for letter '" + d.alphabet[i] +
                    "' targets state " + std::to_string(v) + " outside [0," +
                    std::to_string(d.q) + ")");
  }
  if (d.q0 < 0 || d.q0 >= d.q)
    throw error("start state " + std::to_string(d.q0) + " outside [0," +
                std::to_string(d.q) + ")");
  for (std::int64_t f : d.final)
    if (f < 0 || f >= d.q)
      throw error("final state " + std::to_string(f) + " outside [0," +
                  std::to_string(d.q) + ")");
}

std::int64_t run(const Dfa& d, const std::vector<int>& word) {
  validate_dfa(d);
  std::int64_t state = d.q0;
  for (int letter : word) {
    check_letter(d, letter);
    state = d.delta[static_cast<std::size_t>(letter)]
                   [static_cast<std::size_t>(state)];
  }
  return state;
}

std::int64_t run(const Dfa& d, const std::string& word) {
  return run(d, word_indices(d.alphabet, word));
}

bool dfa_accepts(const Dfa& d, const std::vector<int>& word) {
  return d.final.count(run(d, word)) > 0;
}

bool dfa_accepts(const Dfa& d, const std::string& word) {
  return d.final.count(run(d, word)) > 0;
}

std::int64_t eval_church(const Dfa& d, const Element& f, const Config& cfg) {
  (void)cfg;
  validate_dfa(d);
  int n = static_cast<int>(d.alphabet.size());
  if (f.den() != Den{church_type(n), d.q})
    throw type_error("evaluation needs an element of den(" +
                     to_string(church_type(n)) + ", q=" + std::to_string(d.q) +
                     "), got den(" + to_string(f.type()) + ", q=" +
                     std::to_string(f.q()) + ")");
  Element cur = f;
  for (const auto& t : d.delta) cur = apply(cur, endo_element(t, d.q));
  return static_cast<std::int64_t>(apply(cur, base_element(d.q, d.q0)).index());
}

RegLanguage language_of_dfa_as_reg(const Dfa& d) {
  validate_dfa(d);
  std::vector<Element> letters;
  letters.reserve(d.delta.size());
  for (const auto& t : d.delta) letters.push_back(endo_element(t, d.q));
  return RegLanguage::eval_preimage(std::move(letters), d.q0, d.final);
}

//// word languages of accepting sets /////////////////////////////////////

WordLanguage::WordLanguage(int alphabet_size, int q, std::vector<Nat> accepting)
    : n_(alphabet_size), q_(q), accepting_(std::move(accepting)) {
  if (n_ < 0) throw error("negative alphabet size");
  if (q_ < 1) throw error("base cardinality must be positive");
  std::sort(accepting_.begin(), accepting_.end());
  accepting_.erase(std::unique(accepting_.begin(), accepting_.end()),
                   accepting_.end());
  Nat size = Den{church_type(n_), q_}.size();
  if (!accepting_.empty() &&
      (accepting_.front() < 0 || accepting_.back() >= size))
    throw error("accepting index outside the denotation");
}

bool WordLanguage::contains(const std::vector<int>& word,
                            const Config& cfg) const {
  Nat idx = word_element(n_, word, q_, cfg).index();
  return std::binary_search(accepting_.begin(), accepting_.end(), idx);
}

bool WordLanguage::singleton_contains_via_dfas(const Element& x,
                                               const std::vector<int>& word,
                                               const Config& cfg) {
  int n = -1;
  for (int try_n = 0; try_n < 64 && n < 0; ++try_n)
    if (x.type() == church_type(try_n)) n = try_n;
  if (n < 0)
    throw type_error("accepting element is not at a Church type: " +
                     to_string(x.type()));
  int q = x.q();
  std::int64_t endo_count = 1;
  for (int i = 0; i < q; ++i) {
    endo_count *= q;
    if (endo_count > cfg.table_cap)
      throw cap_error("letter-table space exceeds the cap");
  }
  // every assignment of letter tables, crossed with every start state,
  // is one single-final-state DFA membership test
  std::vector<std::int64_t> choice(static_cast<std::size_t>(n), 0);
  for (;;) {
    Dfa d;
    d.q = q;
    Element functional = x;
    for (int i = 0; i < n; ++i) {
      d.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
      d.delta.push_back(endo_table(choice[static_cast<std::size_t>(i)], q));
      functional =
          apply(functional, endo_element(d.delta.back(), q));
    }
    for (std::int64_t start = 0; start < q; ++start) {
      d.q0 = start;
      d.final = {static_cast<std::int64_t>(
          apply(functional, base_element(q, start)).index())};
      if (!dfa_accepts(d, word)) return false;
    }
    int pos = n - 1;
    while (pos >= 0 && choice[static_cast<std::size_t>(pos)] == endo_count - 1)
      choice[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++choice[static_cast<std::size_t>(pos)];
  }
  return true;
}

//// transition monoids ///////////////////////////////////////////////////

MonoidPresentation transition_monoid(const Dfa& d) {
  validate_dfa(d);
  MonoidPresentation m;
  m.alphabet = d.alphabet;
  m.degree = d.q;
  m.unit = 0;
  std::map<std::vector<std::int64_t>, std::int64_t> index_of;
  m.elements.push_back(identity_table(d.q));
  m.reps.push_back({});
  index_of[m.elements[0]] = 0;
  for (std::size_t i = 0; i < m.elements.size(); ++i)
    for (std::size_t a = 0; a < d.delta.size(); ++a) {
      auto next = table_compose(m.elements[i], d.delta[a]);
      if (index_of.emplace(next, m.elements.size()).second) {
        auto rep = m.reps[i];
        rep.push_back(static_cast<int>(a));
        m.elements.push_back(std::move(next));
        m.reps.push_back(std::move(rep));
      }
    }
  for (const auto& t : d.delta) m.letter_of.push_back(index_of.at(t));
  m.mult.assign(m.elements.size(), {});
  for (std::size_t i = 0; i < m.elements.size(); ++i)
    for (std::size_t j = 0; j < m.elements.size(); ++j)
      m.mult[i].push_back(index_of.at(table_compose(m.elements[i],
                                                    m.elements[j])));
  return m;
}

std::int64_t monoid_hom(const MonoidPresentation& m,
                        const std::vector<int>& word) {
  std::int64_t cur = m.unit;
  for (int letter : word) {
    if (letter < 0 || letter >= static_cast<int>(m.letter_of.size()))
      throw error("letter index " + std::to_string(letter) +
                  " outside the alphabet of " +
                  std::to_string(m.letter_of.size()) + " letters");
    cur = m.mult[static_cast<std::size_t>(cur)]
                [static_cast<std::size_t>(
                    m.letter_of[static_cast<std::size_t>(letter)])];
  }
  return cur;
}

std::int64_t monoid_hom(const MonoidPresentation& m, const std::string& word) {
  return monoid_hom(m, word_indices(m.alphabet, word));
}

std::int64_t monoid_omega(const MonoidPresentation& m, std::int64_t x) {
  if (x < 0 || x >= m.size())
    throw error("element " + std::to_string(x) + " outside the monoid of " +
                std::to_string(m.size()) + " elements");
  std::vector<std::int64_t> powers{x};
  std::map<std::int64_t, int> seen{{x, 1}};
  for (;;) {
    std::int64_t next = m.mult[static_cast<std::size_t>(powers.back())]
                              [static_cast<std::size_t>(x)];
    auto it = seen.find(next);
    if (it == seen.end()) {
      seen.emplace(next, static_cast<int>(powers.size()) + 1);
      powers.push_back(next);
      continue;
    }
    int i = it->second;
    int p = static_cast<int>(powers.size()) + 1 - i;
    int mm = p * ((i + p - 1) / p);
    return powers[static_cast<std::size_t>(mm - 1)];
  }
}

Dfa right_regular_dfa(const std::vector<std::vector<std::int64_t>>& mult,
                      std::int64_t unit,
                      const std::vector<std::int64_t>& generators,
                      Alphabet letter_names, std::set<std::int64_t> final) {
  std::int64_t n = static_cast<std::int64_t>(mult.size());
  if (n < 1) throw error("a monoid needs at least one element");
  for (const auto& row : mult) {
    if (static_cast<std::int64_t>(row.size()) != n)
      throw error("multiplication table is not square");
    for (std::int64_t v : row)
      if (v < 0 || v >= n)
        throw error("multiplication table entry " + std::to_string(v) +
                    " outside [0," + std::to_string(n) + ")");
  }
  if (unit < 0 || unit >= n)
    throw error("unit " + std::to_string(unit) + " outside [0," +
                std::to_string(n) + ")");
  for (std::int64_t i = 0; i < n; ++i)
    if (mult[static_cast<std::size_t>(unit)][static_cast<std::size_t>(i)] !=
            i ||
        mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(unit)] != i)
      throw error("unit law fails at element " + std::to_string(i));
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t k = 0; k < n; ++k) {
        auto at = [&](std::int64_t a, std::int64_t b) {
          return mult[static_cast<std::size_t>(a)]
                     [static_cast<std::size_t>(b)];
        };
        if (at(at(i, j), k) != at(i, at(j, k)))
          throw error("associativity fails at (" + std::to_string(i) + "," +
                      std::to_string(j) + "," + std::to_string(k) + ")");
      }
  if (generators.size() != letter_names.size())
    throw error("got " + std::to_string(letter_names.size()) +
                " letter names for " + std::to_string(generators.size()) +
                " generators");
  Dfa d;
  d.alphabet = std::move(letter_names);
  d.q = static_cast<int>(n);
  d.q0 = unit;
  d.final = std::move(final);
  for (std::int64_t g : generators) {
    if (g < 0 || g >= n)
      throw error("generator " + std::to_string(g) + " outside [0," +
                  std::to_string(n) + ")");
    std::vector<std::int64_t> t(static_cast<std::size_t>(n));
    for (std::int64_t x = 0; x < n; ++x)
      t[static_cast<std::size_t>(x)] =
          mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(g)];
    d.delta.push_back(std::move(t));
  }
  validate_dfa(d);
  return d;
}

std::int64_t proword_level_of_approximant(const Approximant& theta,
                                          const MonoidPresentation& m,
                                          const Config& cfg) {
  if (theta.type() != church_type(static_cast<int>(m.alphabet.size())))
    throw type_error("family at " + to_string(theta.type()) +
                     " does not match a monoid over " +
                     std::to_string(m.alphabet.size()) + " letters");
  int level = static_cast<int>(m.size());
  std::vector<std::vector<std::int64_t>> tables;
  for (std::int64_t g : m.letter_of) {
    std::vector<std::int64_t> t(static_cast<std::size_t>(level));
    for (std::int64_t x = 0; x < level; ++x)
      t[static_cast<std::size_t>(x)] =
          m.mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(g)];
    tables.push_back(std::move(t));
  }
  return theta.church_action(level, tables, m.unit, cfg);
}

}  // namespace prolam
