#ifndef NONSYM_ARTIFACT_IO_HPP
#define NONSYM_ARTIFACT_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "nonsym/construction.hpp"
#include "nonsym/verify.hpp"

namespace nonsym {

/* JSON serialization of a finished construction.

   An artifact stores the problem parameters, the modulus, the build
   configuration, the scalar search results, and the coefficient tables
   on the verification and drift grids. Loading reconstructs the
   profiles from the scalars alone; the tables are kept verbatim so a
   later verification audits the stored numbers instead of silently
   recomputing them.
 */

// Parsed command-line description of a modulus. The table form embeds
// its points, so an artifact written from one can be verified without
// the original file.
struct ModulusSpec {
  std::string kind;  // "power", "log" or "table"
  double M = 1.0;
  double gamma = 1.0;
  std::vector<std::pair<double, double>> points;

  Modulus make() const;

  // Accepted forms: "power:M:gamma", "log:M", "table:file.csv". The
  // file holds one "s,eta" pair per line; '#' starts a comment.
  static ModulusSpec parse(const std::string& text);
};

struct Artifact {
  ProblemParams params;
  ModulusSpec eta;
  BuildConfig build;
  double r = 0.0;
  double delta = 0.0;
  double ramp_K = 0.0;
  double ramp_scale = 0.0;
  double bound = 0.0;
  double sup_raw = 0.0;
  double safety_used = 0.0;
  int rounds = 0;
  std::vector<FieldSample> grid;   // (x, a, c)
  std::vector<FieldSample> drift;  // (x, a); c is 0

  // Profiles and operators from the stored scalars; no searching.
  Counterexample reconstruct() const;
};

inline constexpr const char* kArtifactFormat = "nonsym-counterexample/1";

// Writes ce with its coefficient tables to path. Throws
// std::runtime_error when the file cannot be written.
void save_artifact(const std::string& path, const Counterexample& ce,
                   const ModulusSpec& eta);

// Throws std::runtime_error for unreadable files, malformed JSON, an
// unknown format tag, or inconsistent table lengths.
Artifact load_artifact(const std::string& path);

}  // namespace nonsym

#endif
