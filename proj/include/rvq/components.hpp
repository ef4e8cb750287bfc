#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvq/class_cache.hpp"
#include "rvq/gp.hpp"

namespace rvq {

// Requires a strict permutation whose first top letter is its last bottom
// letter. Throws CriterionInapplicable otherwise.
bool hyperelliptic_test(const GeneralizedPermutation& gp);

// tau_sym(d), tau_zorich(g), sigma_zorich(g), sigma_hyp(s,r), table1(row).
// Throws UnknownLabel, OutOfRange.
GeneralizedPermutation canonical_rep(std::string_view label);

struct ComponentEntry {
  std::string label;
  std::vector<int> orders;  // quadratic convention
  bool abelian;
  // One representative per Rauzy class of the component that we know.
  std::vector<std::string> representatives;
};

const std::vector<ComponentEntry>& component_registry();
// True when every Rauzy class of every component of the stratum is registered.
bool registry_exhaustive(const std::vector<int>& orders, bool abelian);

struct Identification {
  std::optional<std::string> label;
  bool exhaustive = false;  // the stratum is fully covered by the registry
  std::vector<int> orders;
};

class ComponentIdentifier {
 public:
  explicit ComponentIdentifier(std::shared_ptr<ClassStore> store = std::make_shared<ClassStore>(),
                               std::size_t budget = 10'000'000, unsigned threads = 1);

  // Membership in reduced classes of registered representatives. Throws
  // BudgetExceeded.
  Identification identify(const GeneralizedPermutation& gp);

 private:
  std::shared_ptr<ClassStore> store_;
  ClassOptions options_;
};

Identification identify_component(const GeneralizedPermutation& gp);

struct TableRow {
  std::string id;
  std::string start;       // Abelian component of the erased permutation
  std::string end;         // label of the end component, as printed
  std::vector<int> orders;  // end stratum
  std::string gp;
};

// The twelve exceptional-strata rows.
const std::vector<TableRow>& extension_table();
// The genus-two and genus-three examples.
const std::vector<TableRow>& low_genus_examples();

struct RowReport {
  std::string id;
  std::string start;
  std::string end;
  bool irreducible = false;
  bool convention = false;
  std::string erase_order;  // e.g. "B,A": first letter erased first
  std::optional<std::string> identified;
  bool start_matches = false;
  std::vector<int> orders;
  bool stratum_matches = false;
  std::optional<bool> hyperelliptic;  // nullopt when the criterion does not apply
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

RowReport verify_row(const TableRow& row, ComponentIdentifier& identifier);
std::vector<RowReport> verify_extension_table(ComponentIdentifier& identifier,
                                              const std::vector<int>& rows = {});

}  // namespace rvq
