#include "kdet/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kdet {

DensityOperator MixtureDescription::to_density_operator() const {
  std::vector<MixtureComponent> comps;
  comps.reserve(components.size());
  for (const auto& [weight, terms] : components) {
    comps.push_back({weight, PureStateSparse(dims, terms)});
  }
  return DensityOperator::mixture(dims, std::move(comps), noise);
}

ParamFamily MixtureDescription::to_param_family(const std::string& name) const {
  if (components.size() != 2) {
    throw std::invalid_argument("state file must declare exactly two components to act as a "
                                "sweep family, got " + std::to_string(components.size()));
  }
  return ParamFamily::two_component(name, dims, PureStateSparse(dims, components[0].second),
                                    PureStateSparse(dims, components[1].second));
}

MixtureDescription parse_state_file(std::istream& in) {
  std::vector<int> dims;
  double noise = 0.0;
  bool saw_noise = false;
  std::vector<std::pair<double, std::vector<std::pair<ProductLabel, cplx>>>> components;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    const auto fail = [&](const std::string& what) {
      throw std::invalid_argument("state file line " + std::to_string(line_no) + ": " + what);
    };
    if (key == "dims") {
      if (!dims.empty()) fail("duplicate dims directive");
      int d;
      while (ls >> d) dims.push_back(d);
      if (dims.size() < 2) fail("dims needs at least two entries");
    } else if (key == "noise") {
      if (saw_noise) fail("duplicate noise directive");
      if (!(ls >> noise)) fail("noise needs a weight");
      saw_noise = true;
    } else if (key == "component") {
      double w;
      if (!(ls >> w)) fail("component needs a weight");
      components.push_back({w, {}});
    } else if (key == "term") {
      if (dims.empty()) fail("term before dims");
      if (components.empty()) components.push_back({-1.0, {}});  // implicit, weight filled below
      std::vector<int> labels(dims.size());
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (!(ls >> labels[i])) fail("term needs one label per site plus re and im");
      }
      double re, im;
      if (!(ls >> re >> im)) fail("term needs a complex amplitude (re im)");
      components.back().second.emplace_back(ProductLabel(std::move(labels)), cplx(re, im));
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (dims.empty()) throw std::invalid_argument("state file: missing dims directive");
  if (components.empty()) throw std::invalid_argument("state file: no components or terms");
  if (components.size() == 1 && components[0].first < 0.0) {
    components[0].first = 1.0 - noise;
  }
  for (const auto& [w, terms] : components) {
    if (w < 0.0) throw std::invalid_argument("state file: component without explicit weight");
    if (terms.empty()) throw std::invalid_argument("state file: component without terms");
  }

  MixtureDescription desc{DimensionVector(dims), std::move(components), noise};
  return desc;
}

MixtureDescription load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  return parse_state_file(in);
}

}  // namespace kdet
