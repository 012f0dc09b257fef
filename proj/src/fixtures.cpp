#include "svcrisk/fixtures.hpp"

#include <map>

#include "svcrisk/graph_io.hpp"

namespace svcrisk::detail {
const std::map<std::string, std::string_view>& embedded_fixtures();
}

namespace svcrisk::fixtures {

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : detail::embedded_fixtures()) out.push_back(name);
  return out;
}

std::string_view document(std::string_view name) {
  const auto& table = detail::embedded_fixtures();
  auto it = table.find(std::string(name));
  if (it == table.end()) {
    throw Error(ErrorCode::InvalidArgument, "no bundled fixture named " + std::string(name));
  }
  return it->second;
}

CombinedModel load(std::string_view name) { return load_model(document(name)); }

CombinedModel paper_fixture() { return load("paper_fixture"); }
CombinedModel fig1_toy() { return load("fig1_toy"); }
CombinedModel appendix_toy() { return load("appendix_toy"); }

}  // namespace svcrisk::fixtures
