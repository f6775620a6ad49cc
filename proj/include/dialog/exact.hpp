#pragma once

#include <map>
#include <string>
#include <vector>

#include "dialog/decorate.hpp"
#include "dialog/models.hpp"
#include "dialog/parameterize.hpp"

namespace dialog {

/// The model 𝓜(α) of the undecorated specification: carriers and pure terms
/// as in `ma`, and each general f read as x ↦ ma(f')(α, x).
inline FiniteModel pass_parameter(const DecoratedSpecification& d, const Parameterization& p, const FiniteModel& ma,
                                  std::size_t alpha) {
  const std::string& A = p.spec.parameter_type;
  std::size_t na = ma.size(A);
  if (alpha >= na)
    throw Error(ErrorKind::invalid_alpha,
                "parameter " + std::to_string(alpha) + " is outside a carrier of size " + std::to_string(na));
  FiniteModel out;
  for (const auto& t : d.base.types) out.carriers[t] = ma.carriers.at(t);
  for (const auto& [f, sig] : d.base.terms) {
    if (d.is_pure(f)) {
      out.functions[f] = ma.functions.at(f);
      continue;
    }
    // A×X is enumerated with A most significant.
    std::size_t nx = out.size(sig.dom);
    const auto& table = ma.functions.at(p.primed.at(f));
    std::vector<std::size_t> row(nx);
    for (std::size_t x = 0; x < nx; ++x) row[x] = table[alpha * nx + x];
    out.functions[f] = std::move(row);
  }
  return out;
}

/// The model of embed_a(parameterize(d)) given by `ma` and a value α of a.
inline FiniteModel with_constant(const ParameterizedSpecificationWithConstant& pa, const FiniteModel& ma,
                                 std::size_t alpha) {
  FiniteModel out = ma;
  const Specification& s = pa.spec();
  if (!out.carriers.count(*s.terminal)) out.carriers[*s.terminal] = {"*"};
  out.functions[pa.parameter_constant] = {alpha};
  for (const auto& [x, c] : s.collapsings)
    if (!out.functions.count(c)) out.functions[c] = std::vector<std::size_t>(out.size(x), 0);
  return out;
}

struct TerminalModel {
  Parameterization parameterization;
  FiniteModel model;                // a model of parameterization.spec.base
  std::vector<FiniteModel> records;  // the element "m<i>" of A is records[i]
};

/// The terminal model over `m0`: the parameter set is the set of models of
/// the undecorated specification extending m0, and f'(m, x) = m(f)(x).
inline TerminalModel terminal_model(const DecoratedSpecification& d, const FiniteModel& m0,
                                    const CarrierSizes& base_carriers = {}, EnumerationOptions opts = {}) {
  if (auto v = check_model(pure_part(d), m0); !v.empty()) throw Error(ErrorKind::invalid_spec, v.front());
  TerminalModel r{parameterize(d), {}, {}};
  r.records = enumerate_models(d.base, base_carriers, m0, opts);
  const Specification& ps = r.parameterization.spec.base;
  const std::string& A = r.parameterization.spec.parameter_type;

  FiniteModel m;
  std::map<std::string, std::vector<std::string>> base;
  for (const auto& t : d.base.types) base[t] = m0.carriers.at(t);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < r.records.size(); ++i) labels.push_back("m" + std::to_string(i));
  base[A] = labels;
  m.carriers = derive_carriers(ps, base);
  for (const auto& [f, table] : m0.functions) m.functions[f] = table;
  for (const auto& [f, fp] : r.parameterization.primed) {
    const auto& sig = d.base.sig(f);
    std::size_t nx = m.size(sig.dom);
    std::vector<std::size_t> table(r.records.size() * nx);
    for (std::size_t i = 0; i < r.records.size(); ++i)
      for (std::size_t x = 0; x < nx; ++x) table[i * nx + x] = r.records[i].functions.at(f)[x];
    m.functions[fp] = std::move(table);
  }
  r.model = complete_model(ps, std::move(m));
  if (auto v = check_model(ps, r.model); !v.empty())
    throw Error(ErrorKind::invalid_spec, "terminal model check failed: " + v.front());
  return r;
}

struct TerminalityReport {
  bool terminal = true;
  std::size_t models_checked = 0;
  std::string failure;  // first model with a number of homomorphisms other than one
};

/// Bounded terminality: every model N of parameterize(d) extending m0 with
/// |N(A)| <= bound has exactly one homomorphism N -> m fixing m0.
inline TerminalityReport is_terminal(const DecoratedSpecification& d, const Parameterization& p, const FiniteModel& m,
                                     const FiniteModel& m0, std::size_t bound, EnumerationOptions opts = {}) {
  TerminalityReport rep;
  const Specification& ps = p.spec.base;
  const std::string& A = p.spec.parameter_type;
  FiniteModel fixed;
  std::map<std::string, std::vector<std::size_t>> identity;
  for (const auto& t : d.base.types) {
    fixed.carriers[t] = m0.carriers.at(t);
    std::vector<std::size_t> id(m0.carriers.at(t).size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    identity[t] = id;
  }
  fixed.functions = m0.functions;
  for (std::size_t n = 0; n <= bound; ++n) {
    for (const auto& N : enumerate_models(ps, {{A, n}}, fixed, opts)) {
      ++rep.models_checked;
      std::size_t homs = hom_search(ps, N, m, identity, opts.cap).size();
      if (homs != 1) {
        rep.terminal = false;
        rep.failure = "a model with |" + A + "| = " + std::to_string(n) + " has " + std::to_string(homs) +
                      " homomorphisms";
        return rep;
      }
    }
  }
  return rep;
}

struct ExactnessReport {
  std::size_t parameters = 0;       // |M_A(A)|
  std::size_t extending_models = 0;  // models of the undecorated spec extending m0
  bool injective = false;
  bool surjective = false;
  std::vector<std::pair<std::string, std::size_t>> table;  // α label -> index of 𝓜(α)
  bool bijection() const { return injective && surjective && parameters == extending_models; }
};

/// Checks that α ↦ 𝓜(α) is a bijection from the parameters of the terminal
/// model onto the models extending m0 with the given base carriers.
inline ExactnessReport exactness_check(const DecoratedSpecification& d, const FiniteModel& m0,
                                       const CarrierSizes& base_carriers = {}, EnumerationOptions opts = {}) {
  TerminalModel tm = terminal_model(d, m0, base_carriers, opts);
  std::vector<FiniteModel> models = enumerate_models(d.base, base_carriers, m0, opts);
  ExactnessReport rep;
  const std::string& A = tm.parameterization.spec.parameter_type;
  rep.parameters = tm.model.size(A);
  rep.extending_models = models.size();
  std::vector<bool> hit(models.size(), false);
  rep.injective = true;
  for (std::size_t alpha = 0; alpha < rep.parameters; ++alpha) {
    FiniteModel ma = pass_parameter(d, tm.parameterization, tm.model, alpha);
    std::size_t index = models.size();
    for (std::size_t i = 0; i < models.size(); ++i)
      if (models[i] == ma) index = i;
    if (index == models.size() || hit[index]) rep.injective = false;
    if (index < models.size()) hit[index] = true;
    rep.table.emplace_back(tm.model.carriers.at(A)[alpha], index);
  }
  rep.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  return rep;
}

}  // namespace dialog
