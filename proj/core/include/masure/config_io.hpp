#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "masure/atlas.hpp"

namespace masure {

/* Parsed config file; see docs/formats.md for the grammar.  Unset fields
   fall back to defaults when the corresponding object is built. */
struct Config {
  std::optional<CoxeterDatum> datum;
  std::optional<int> dim;
  std::vector<RatVec> alpha, alphavee;  // both given or both empty
  std::vector<Rat> gamma;               // one step per orbit class
  ImaginaryPolicy policy = ImaginaryPolicy::none;
  std::optional<int> truncation;

  enum class AtlasKind { none, tree, product, explicit_charts };
  AtlasKind kind = AtlasKind::none;
  int q = 2, q2 = 2, depth = 2;
  std::vector<std::vector<RatVec>> windows;  // hull points per chart
  struct GluingLine {
    int a = -1, b = -1;
    std::vector<int> word;
    RatVec shift;
    std::vector<RatVec> domain;  // hull points
  };
  std::vector<GluingLine> gluings;
};

/* Errors carry "name:line:column: message". */
Config parse_config(std::istream& in, const std::string& name = "<config>");
Config parse_config_file(const std::string& path);

/* Truncation from the config, else the MASURE_H environment variable, else 8. */
int effective_truncation(const Config& c);

ApartmentModel model_from(const Config& c);
std::unique_ptr<Atlas> atlas_from(const Config& c);

/* Exact rational syntax "p/q" (or plain "p"); rejects zero denominators. */
Rat parse_rat(const std::string& s);
std::string format_rat(const Rat& x);
RatVec parse_vec(const std::string& s);  // comma-separated rationals

}  // namespace masure
