#include "hysst/serialization.hpp"

#include <stdexcept>

namespace hysst {

namespace {

nlohmann::json arc_rows(const HybridArc& arc) {
  nlohmann::json rows = nlohmann::json::array();
  for (int j = 0; j <= arc.domain().max_jump(); ++j) {
    for (const auto& s : arc.interval(j)) {
      nlohmann::json row = nlohmann::json::array();
      row.push_back(s.t);
      row.push_back(j);
      for (Eigen::Index k = 0; k < s.value.size(); ++k) row.push_back(s.value[k]);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

HybridArc arc_from_rows(const HybridTimeDomain& dom, const nlohmann::json& rows) {
  std::vector<std::vector<ArcSample>> samples(dom.num_intervals());
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() < 3)
      throw std::invalid_argument("arc row must be [t, j, values...]");
    const double t = row[0].get<double>();
    const int j = row[1].get<int>();
    if (j < 0 || j > dom.max_jump())
      throw std::invalid_argument("arc row jump index outside domain");
    Eigen::VectorXd v(row.size() - 2);
    for (std::size_t k = 2; k < row.size(); ++k)
      v[static_cast<Eigen::Index>(k - 2)] = row[k].get<double>();
    samples[j].push_back({t, std::move(v)});
  }
  return HybridArc(dom, std::move(samples));
}

}  // namespace

nlohmann::json to_json(const SolutionPair& psi) {
  const auto& dom = psi.domain();
  nlohmann::json domain = nlohmann::json::array();
  for (int j = 0; j <= dom.max_jump(); ++j)
    domain.push_back({dom.interval_start(j), dom.interval_end(j), j});
  return nlohmann::json{{"domain", std::move(domain)},
                        {"states", arc_rows(psi.state_arc)},
                        {"inputs", arc_rows(psi.input_arc)}};
}

SolutionPair solution_pair_from_json(const nlohmann::json& j) {
  if (!j.contains("domain") || !j.contains("states") || !j.contains("inputs"))
    throw std::invalid_argument("solution pair needs domain, states and inputs");

  std::vector<double> boundaries;
  int expected_j = 0;
  for (const auto& row : j.at("domain")) {
    if (!row.is_array() || row.size() != 3)
      throw std::invalid_argument("domain row must be [t_start, t_end, j]");
    const double lo = row[0].get<double>();
    const double hi = row[1].get<double>();
    if (row[2].get<int>() != expected_j)
      throw std::invalid_argument("domain rows must list jump indices in order");
    if (boundaries.empty())
      boundaries.push_back(lo);
    else if (boundaries.back() != lo)
      throw std::invalid_argument("domain intervals must be contiguous");
    boundaries.push_back(hi);
    ++expected_j;
  }
  HybridTimeDomain dom(std::move(boundaries));
  return SolutionPair(arc_from_rows(dom, j.at("states")),
                      arc_from_rows(dom, j.at("inputs")));
}

}  // namespace hysst
