#pragma once

// Fixed genus data: each entry lists one representative per class together
// with the order of its isometry group. Orders are recomputed from
// automorphisms() on first access and must agree with the stored values.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsq/quadform.hpp"
#include "rsq/rational.hpp"

namespace rsq {

struct GenusClass {
  QuadForm form;
  Natural isometry_order;
};

struct GenusEntry {
  std::string label;
  std::vector<GenusClass> classes;

  std::size_t class_number() const { return classes.size(); }

  /// w = sum of 1/o(g) over the classes.
  Rational mass() const {
    Rational w = 0;
    for (const auto& c : classes) w += Rational(1, c.isometry_order);
    return w;
  }
};

/// (1/w) * sum_g r(a, g) / o(g).
inline Rational mass_weighted_count(const GenusEntry& entry, Natural a) {
  if (entry.classes.empty()) throw std::invalid_argument("mass_weighted_count: empty genus entry");
  Rational total = 0;
  for (const auto& c : entry.classes) total += Rational(rep_count(c.form, a), c.isometry_order);
  return total / entry.mass();
}

/// Ramanujan's ternary x^2 + y^2 + 10z^2.
inline QuadForm ramanujan_form() { return QuadForm::diagonal({1, 1, 10}); }

/// The second class in its genus: <2> + [[2,1],[1,3]].
inline QuadForm ramanujan_partner() { return QuadForm({{2, 0, 0}, {0, 2, 1}, {0, 1, 3}}); }

namespace detail {

inline std::vector<GenusEntry> build_registry() {
  std::vector<GenusEntry> entries = {
      {"I1", {{QuadForm::identity(1), 2}}},
      {"I2", {{QuadForm::identity(2), 8}}},
      {"I3", {{QuadForm::identity(3), 48}}},
      {"I4", {{QuadForm::identity(4), 384}}},
      {"<1,5>", {{QuadForm::diagonal({1, 5}), 4}}},
      {"<1,1,2>", {{QuadForm::diagonal({1, 1, 2}), 16}}},
      {"<1,1,5>", {{QuadForm::diagonal({1, 1, 5}), 16}}},
      {"<1,1,10>", {{ramanujan_form(), 16}, {ramanujan_partner(), 8}}},
  };
  for (const auto& e : entries) {
    for (const auto& c : e.classes) {
      if (c.form.rank() != e.classes.front().form.rank() ||
          c.form.discriminant() != e.classes.front().form.discriminant())
        throw std::logic_error("genus registry: classes of " + e.label + " disagree in rank or discriminant");
      Natural computed = automorphisms(c.form).order;
      if (computed != c.isometry_order)
        throw std::logic_error("genus registry: o(" + c.form.to_string() + ") computed " + std::to_string(computed) +
                               ", stored " + std::to_string(c.isometry_order));
    }
  }
  return entries;
}

}  // namespace detail

inline const std::vector<GenusEntry>& genus_registry() {
  static const std::vector<GenusEntry> registry = detail::build_registry();
  return registry;
}

inline const GenusEntry& genus_entry(std::string_view label) {
  for (const auto& e : genus_registry())
    if (e.label == label) return e;
  throw std::out_of_range("genus registry: no entry '" + std::string(label) + "'");
}

}  // namespace rsq
