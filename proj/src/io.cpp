#include "digraphon/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace digraphon {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("cannot write " + path);
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError(what + ": not valid JSON");
  return j;
}

Weights4 parse_cell(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 4) throw FormatError(what + ": each cell must be a 4-array");
  Weights4 w;
  for (int t = 0; t < 4; ++t) {
    if (!v[t].is_number()) throw FormatError(what + ": cell entries must be numbers");
    w[t] = v[t].get<double>();
  }
  return w;
}

// Renormalizes a cell sum to exactly 1; rejects deviations of 1e-9 or more.
void renormalize(Weights4& w, int r, int s) {
  double sum = w[0] + w[1] + w[2] + w[3];
  if (!(std::abs(sum - 1.0) < 1e-9)) {
    std::ostringstream os;
    os << "digraphon cell (" << r << "," << s << ") sums to " << sum;
    throw FormatError(os.str());
  }
  for (double& v : w) v /= sum;
}

}  // namespace

std::string format_double(double v) {
  return json(v).dump();
}

StepDigraphon digraphon_from_json(const std::string& text) {
  json j = parse_json(text, "digraphon spec");
  if (!j.is_object() || !j.contains("cuts") || !j.contains("weights") || !j.contains("selfloop"))
    throw FormatError("digraphon spec: need cuts, weights, and selfloop fields");

  StepDigraphon d;
  for (const auto& c : j["cuts"]) {
    if (!c.is_number()) throw FormatError("digraphon spec: cuts must be numbers");
    d.cuts.push_back(c.get<double>());
  }
  const int k = static_cast<int>(d.cuts.size()) + 1;

  const json& sl = j["selfloop"];
  if (!sl.is_array() || static_cast<int>(sl.size()) != k)
    throw FormatError("digraphon spec: selfloop must list one 0/1 value per class");
  for (const auto& v : sl) {
    if (!v.is_number_integer()) throw FormatError("digraphon spec: selfloop values must be integers");
    d.selfloop.push_back(v.get<int>());
  }

  const json& rows = j["weights"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != k)
    throw FormatError("digraphon spec: weights must hold k rows");
  d.weights.assign(static_cast<std::size_t>(k) * k, Weights4{0, 0, 0, 0});
  std::vector<std::vector<char>> given(k, std::vector<char>(k, 0));
  for (int r = 0; r < k; ++r) {
    const json& row = rows[r];
    if (!row.is_array()) throw FormatError("digraphon spec: weights rows must be arrays");
    int len = static_cast<int>(row.size());
    int first;  // column index of the row's first entry
    if (len == k)
      first = 0;
    else if (len == k - r)
      first = r;  // suffix row: cells (r, r..k-1), lower triangle omitted
    else
      throw FormatError("digraphon spec: weights row " + std::to_string(r) +
                        " must have k or k-r entries");
    for (int t = 0; t < len; ++t) {
      int s = first + t;
      d.cell(r, s) = parse_cell(row[t], "digraphon spec");
      given[r][s] = 1;
    }
  }

  // Mirror the upper triangle over anything omitted; reject inconsistent
  // fully-specified input via validate() below.
  for (int r = 0; r < k; ++r)
    for (int s = 0; s < r; ++s)
      if (!given[r][s]) d.cell(r, s) = transpose_cell(d.cell(s, r));

  for (int r = 0; r < k; ++r)
    for (int s = 0; s < k; ++s) renormalize(d.cell(r, s), r, s);

  // Renormalization nudges mirrored cells independently; reimpose exact
  // symmetry from the upper triangle before validating.
  for (int r = 0; r < k; ++r) {
    Weights4& dd = d.cell(r, r);
    double single = (dd[kReverse] + dd[kForward]) / 2.0;
    if (std::abs(dd[kReverse] - dd[kForward]) > 1e-9)
      throw FormatError("digraphon spec: diagonal cell (" + std::to_string(r) + "," +
                        std::to_string(r) + ") must give equal mass to 01 and 10");
    dd[kReverse] = dd[kForward] = single;
    for (int s = r + 1; s < k; ++s) {
      const Weights4 up = d.cell(r, s);
      const Weights4 lo = d.cell(s, r);
      const Weights4 mirrored = transpose_cell(up);
      for (int t = 0; t < 4; ++t)
        if (std::abs(lo[t] - mirrored[t]) > 1e-9)
          throw FormatError("digraphon spec: cells (" + std::to_string(r) + "," +
                            std::to_string(s) + ") and (" + std::to_string(s) + "," +
                            std::to_string(r) + ") are not transpose-symmetric");
      d.cell(s, r) = mirrored;
    }
  }

  ValidationResult res = validate(d);
  if (!res.ok()) {
    std::string msg = "digraphon spec: invalid digraphon";
    for (const auto& v : res.violations) msg += "\n  " + v;
    throw FormatError(msg);
  }
  return d;
}

std::string digraphon_to_json(const StepDigraphon& d) {
  const int k = d.num_classes();
  json j;
  j["cuts"] = d.cuts;
  j["selfloop"] = d.selfloop;
  json rows = json::array();
  for (int r = 0; r < k; ++r) {
    json row = json::array();
    for (int s = 0; s < k; ++s) {
      const Weights4& w = d.cell(r, s);
      row.push_back(json::array({w[0], w[1], w[2], w[3]}));
    }
    rows.push_back(row);
  }
  j["weights"] = rows;
  return j.dump(2) + "\n";
}

StepDigraphon load_digraphon(const std::string& path) {
  return digraphon_from_json(read_file(path));
}

void save_digraphon(const StepDigraphon& d, const std::string& path) {
  write_file(path, digraphon_to_json(d));
}

Digraph load_digraph(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string head;
  if (!(in >> head)) throw FormatError(path + ": empty digraph file");

  if (head == "digraph") {
    int n;
    if (!(in >> n) || n < 0) throw FormatError(path + ": edge list needs a vertex count");
    Digraph g(n);
    int i, j;
    while (in >> i) {
      if (!(in >> j)) throw FormatError(path + ": dangling edge endpoint");
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw FormatError(path + ": edge endpoint out of range");
      g(i, j) = 1;
    }
    return g;
  }

  int n;
  try {
    n = std::stoi(head);
  } catch (const std::exception&) {
    throw FormatError(path + ": expected a vertex count or 'digraph' header");
  }
  if (n < 0) throw FormatError(path + ": negative vertex count");
  Digraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int v;
      if (!(in >> v)) throw FormatError(path + ": truncated adjacency matrix");
      if (v != 0 && v != 1) throw FormatError(path + ": adjacency entries must be 0 or 1");
      g(i, j) = static_cast<std::uint8_t>(v);
    }
  }
  return g;
}

void save_digraph(const Digraph& g, const std::string& path) {
  std::ostringstream out;
  out << g.n << "\n";
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (j) out << ' ';
      out << static_cast<int>(g(i, j));
    }
    out << "\n";
  }
  write_file(path, out.str());
}

std::vector<double> load_latents(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<double> u;
  double v;
  while (in >> v) u.push_back(v);
  if (!in.eof()) throw FormatError(path + ": malformed latent value");
  return u;
}

void save_latents(const std::vector<double>& u, const std::string& path) {
  std::ostringstream out;
  for (double v : u) out << format_double(v) << "\n";
  write_file(path, out.str());
}

std::vector<int> load_labels(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<int> z;
  int v;
  while (in >> v) z.push_back(v);
  if (!in.eof()) throw FormatError(path + ": malformed label");
  return z;
}

void save_labels(const std::vector<int>& z, const std::string& path) {
  std::ostringstream out;
  for (int v : z) out << v << "\n";
  write_file(path, out.str());
}

DirmHyperParams load_hyperparams(const std::string& path) {
  json j = parse_json(read_file(path), path);
  DirmHyperParams h;
  if (!j.is_object()) throw FormatError(path + ": hyperparameter file must be a JSON object");
  if (j.contains("alpha")) h.alpha = j["alpha"].get<double>();
  if (j.contains("beta")) {
    const json& b = j["beta"];
    if (!b.is_array() || b.size() != 4) throw FormatError(path + ": beta must be a 4-array");
    for (int t = 0; t < 4; ++t) h.beta[t] = b[t].get<double>();
  }
  if (j.contains("beta_diag")) {
    const json& b = j["beta_diag"];
    if (!b.is_array() || b.size() != 3) throw FormatError(path + ": beta_diag must be a 3-array");
    std::array<double, 3> d;
    for (int t = 0; t < 3; ++t) d[t] = b[t].get<double>();
    h.beta_diag = d;
  }
  if (j.contains("truncation")) h.truncation = j["truncation"].get<int>();
  try {
    check_hyperparams(h);
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
  return h;
}

void save_hyperparams(const DirmHyperParams& h, const std::string& path) {
  json j;
  j["alpha"] = h.alpha;
  j["beta"] = h.beta;
  if (h.beta_diag) j["beta_diag"] = *h.beta_diag;
  j["truncation"] = h.truncation;
  write_file(path, j.dump(2) + "\n");
}

void save_trace(const std::vector<TraceRecord>& trace, const std::string& path) {
  std::ostringstream out;
  for (const auto& rec : trace) {
    out << rec.iter << ' ' << rec.num_clusters << ' ' << format_double(rec.log_joint);
    for (int lab : rec.z) out << ' ' << lab;
    out << "\n";
  }
  write_file(path, out.str());
}

std::vector<TraceRecord> load_trace(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<TraceRecord> trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    TraceRecord rec;
    if (!(ls >> rec.iter >> rec.num_clusters >> rec.log_joint))
      throw FormatError(path + ": malformed trace record");
    int lab;
    while (ls >> lab) rec.z.push_back(lab);
    trace.push_back(std::move(rec));
  }
  return trace;
}

}  // namespace digraphon
