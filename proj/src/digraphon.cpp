#include "digraphon/digraphon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace digraphon {

namespace {

constexpr double kSumTol = 1e-12;

std::string cell_str(int r, int s) {
  std::ostringstream os;
  os << "cell (" << r << "," << s << ")";
  return os.str();
}

// Shared shape checks for the block-function constructors.
void check_block_input(const std::vector<std::vector<double>>& f,
                       const std::vector<double>& cuts, const char* what) {
  const std::size_t k = cuts.size() + 1;
  if (f.size() != k) throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(k) + " rows");
  for (const auto& row : f) {
    if (row.size() != k) throw std::invalid_argument(std::string(what) + ": matrix must be k x k");
    for (double v : row)
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + ": entries must lie in [0,1]");
  }
  for (std::size_t t = 0; t < cuts.size(); ++t) {
    double lo = t == 0 ? 0.0 : cuts[t - 1];
    if (!(cuts[t] > lo && cuts[t] < 1.0))
      throw std::invalid_argument(std::string(what) + ": cuts must be strictly increasing within (0,1)");
  }
}

StepDigraphon blank(std::vector<double> cuts) {
  StepDigraphon d;
  d.cuts = std::move(cuts);
  const int k = static_cast<int>(d.cuts.size()) + 1;
  d.weights.assign(static_cast<std::size_t>(k) * k, Weights4{0, 0, 0, 0});
  d.selfloop.assign(k, 0);
  return d;
}

std::vector<double> uniform_cuts(int k) {
  std::vector<double> cuts;
  cuts.reserve(k - 1);
  for (int t = 1; t < k; ++t) cuts.push_back(static_cast<double>(t) / k);
  return cuts;
}

}  // namespace

int StepDigraphon::class_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::out_of_range("class_of: argument outside [0,1]");
  // First cut strictly greater than x; x == 1 lands in the last class.
  auto it = std::upper_bound(cuts.begin(), cuts.end(), x);
  return static_cast<int>(it - cuts.begin());
}

std::vector<double> StepDigraphon::class_masses() const {
  std::vector<double> m;
  const int k = num_classes();
  m.reserve(k);
  double prev = 0.0;
  for (int t = 0; t < k; ++t) {
    double hi = t + 1 < k ? cuts[t] : 1.0;
    m.push_back(hi - prev);
    prev = hi;
  }
  return m;
}

ValidationResult validate(const StepDigraphon& d) {
  ValidationResult res;
  auto fail = [&res](const std::string& msg) { res.violations.push_back(msg); };

  const int k = d.num_classes();
  if (k < 1) {
    fail("digraphon must have at least one class");
    return res;
  }
  if (d.weights.size() != static_cast<std::size_t>(k) * k) {
    fail("weights must hold k*k cells (k = " + std::to_string(k) + ")");
    return res;
  }

  double prev = 0.0;
  for (std::size_t t = 0; t < d.cuts.size(); ++t) {
    if (!(d.cuts[t] > prev && d.cuts[t] < 1.0))
      fail("cut " + std::to_string(t) + ": cuts must be strictly increasing within (0,1)");
    prev = d.cuts[t];
  }

  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      const Weights4& w = d.cell(r, s);
      double sum = 0.0;
      for (int t = 0; t < 4; ++t) {
        if (!(w[t] >= 0.0 && w[t] <= 1.0))
          fail(cell_str(r, s) + ": component " + std::to_string(t) + " outside [0,1]");
        sum += w[t];
      }
      if (std::abs(sum - 1.0) > kSumTol)
        fail(cell_str(r, s) + ": components sum to " + std::to_string(sum) + ", expected 1");
    }
  }
  for (int r = 0; r < k; ++r) {
    if (std::abs(d.cell(r, r)[kReverse] - d.cell(r, r)[kForward]) > kSumTol)
      fail(cell_str(r, r) + ": diagonal cell must give equal mass to 01 and 10");
    for (int s = r + 1; s < k; ++s) {
      const Weights4& a = d.cell(r, s);
      const Weights4& b = d.cell(s, r);
      if (std::abs(a[kNone] - b[kNone]) > kSumTol || std::abs(a[kMutual] - b[kMutual]) > kSumTol ||
          std::abs(a[kReverse] - b[kForward]) > kSumTol || std::abs(a[kForward] - b[kReverse]) > kSumTol)
        fail(cell_str(r, s) + ": violates the transpose symmetry with " + cell_str(s, r));
    }
  }
  for (int r = 0; r < k; ++r)
    if (d.selfloop[r] != 0 && d.selfloop[r] != 1)
      fail("selfloop class " + std::to_string(r) + ": value must be 0 or 1");
  return res;
}

Weights4 evaluate(const StepDigraphon& d, double x, double y) {
  return d.cell(d.class_of(x), d.class_of(y));
}

StepDigraphon from_asymmetric(const std::vector<std::vector<double>>& f,
                              const std::vector<double>& cuts) {
  check_block_input(f, cuts, "from_asymmetric");
  StepDigraphon d = blank(cuts);
  const int k = d.num_classes();
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      const double p = f[r][s];
      const double q = f[s][r];
      const double both = p * q;
      d.cell(r, s) = {(1.0 - p) * (1.0 - q), q - both, p - both, both};
    }
  }
  return d;
}

StepDigraphon undirected_from_graphon(const std::vector<std::vector<double>>& g,
                                      const std::vector<double>& cuts) {
  check_block_input(g, cuts, "undirected_from_graphon");
  const int k = static_cast<int>(cuts.size()) + 1;
  for (int r = 0; r < k; ++r)
    for (int s = r + 1; s < k; ++s)
      if (g[r][s] != g[s][r]) throw std::invalid_argument("undirected_from_graphon: graphon must be symmetric");
  StepDigraphon d = blank(cuts);
  for (int r = 0; r < k; ++r)
    for (int s = 0; s < k; ++s) d.cell(r, s) = {1.0 - g[r][s], 0.0, 0.0, g[r][s]};
  return d;
}

StepDigraphon tournament_from_kernel(const std::vector<std::vector<double>>& t,
                                     const std::vector<double>& cuts) {
  check_block_input(t, cuts, "tournament_from_kernel");
  const int k = static_cast<int>(cuts.size()) + 1;
  for (int r = 0; r < k; ++r)
    for (int s = r; s < k; ++s)
      if (t[r][s] + t[s][r] != 1.0)
        throw std::invalid_argument("tournament_from_kernel: kernel must satisfy t[r][s] + t[s][r] = 1");
  StepDigraphon d = blank(cuts);
  for (int r = 0; r < k; ++r)
    for (int s = 0; s < k; ++s) d.cell(r, s) = {0.0, 1.0 - t[r][s], t[r][s], 0.0};
  return d;
}

StepDigraphon linear_order_digraphon(int k) {
  if (k < 1) throw std::invalid_argument("linear_order_digraphon: need k >= 1");
  StepDigraphon d = blank(uniform_cuts(k));
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      if (r == s)
        d.cell(r, s) = {0.0, 0.5, 0.5, 0.0};
      else if (r < s)
        d.cell(r, s) = {0.0, 0.0, 1.0, 0.0};
      else
        d.cell(r, s) = {0.0, 1.0, 0.0, 0.0};
    }
  }
  return d;
}

StepDigraphon generic_dag_digraphon(int k) {
  if (k < 1) throw std::invalid_argument("generic_dag_digraphon: need k >= 1");
  StepDigraphon d = blank(uniform_cuts(k));
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      if (r == s)
        d.cell(r, s) = {1.0, 0.0, 0.0, 0.0};
      else if (r < s)
        d.cell(r, s) = {0.5, 0.0, 0.5, 0.0};
      else
        d.cell(r, s) = {0.5, 0.5, 0.0, 0.0};
    }
  }
  return d;
}

StepDigraphon poset_block_digraphon(bool with_loops) {
  StepDigraphon d = blank({0.25, 0.75});
  auto forward = [&d](int r, int s, double p) {
    d.cell(r, s) = {1.0 - p, 0.0, p, 0.0};
    d.cell(s, r) = {1.0 - p, p, 0.0, 0.0};
  };
  for (int r = 0; r < 3; ++r) d.cell(r, r) = {1.0, 0.0, 0.0, 0.0};
  forward(0, 1, 0.5);
  forward(1, 2, 0.5);
  forward(0, 2, 1.0);
  if (with_loops) d.selfloop = {1, 1, 1};
  return d;
}

StepDigraphon erdos_renyi_digraphon(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi_digraphon: density must lie in [0,1]");
  return undirected_from_graphon({{p}}, {});
}

StepDigraphon half_digraphon() {
  StepDigraphon d = blank({0.5});
  d.cell(0, 0) = {0.5, 0.0, 0.0, 0.5};
  d.cell(1, 1) = {0.5, 0.0, 0.0, 0.5};
  d.cell(0, 1) = {0.0, 0.5, 0.5, 0.0};
  d.cell(1, 0) = {0.0, 0.5, 0.5, 0.0};
  return d;
}

}  // namespace digraphon
