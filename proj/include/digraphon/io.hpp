#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "digraphon/digraphon.hpp"
#include "digraphon/dirm.hpp"
#include "digraphon/inference.hpp"

namespace digraphon {

// File could not be opened, read, or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File was readable but its contents violate the format or the digraphon
// invariants.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Digraphon spec file: JSON object with "cuts" (numbers), "weights" (k rows
// of 4-arrays [w00,w01,w10,w11]; a row may carry only its suffix from the
// diagonal onward, the loader mirrors the rest), "selfloop" (k 0/1 values).
// Cell sums are renormalized when they deviate from 1 by less than 1e-9 and
// rejected otherwise; the loaded object always passes validate().
StepDigraphon load_digraphon(const std::string& path);
void save_digraphon(const StepDigraphon& d, const std::string& path);
std::string digraphon_to_json(const StepDigraphon& d);
StepDigraphon digraphon_from_json(const std::string& text);

// Digraph file: either "n" followed by n rows of n space-separated 0/1
// entries, or an edge list headed by "digraph n" with one "i j" line per
// edge. The writer always emits the matrix form.
Digraph load_digraph(const std::string& path);
void save_digraph(const Digraph& g, const std::string& path);

// One decimal per line.
std::vector<double> load_latents(const std::string& path);
void save_latents(const std::vector<double>& u, const std::string& path);

// One integer label per line.
std::vector<int> load_labels(const std::string& path);
void save_labels(const std::vector<int>& z, const std::string& path);

// JSON object with "alpha", "beta" (4-array), optional "beta_diag"
// (3-array), optional "truncation".
DirmHyperParams load_hyperparams(const std::string& path);
void save_hyperparams(const DirmHyperParams& h, const std::string& path);

// One line per record: iteration, cluster count, log joint, then the z
// vector, all space-separated.
void save_trace(const std::vector<TraceRecord>& trace, const std::string& path);
std::vector<TraceRecord> load_trace(const std::string& path);

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace digraphon
