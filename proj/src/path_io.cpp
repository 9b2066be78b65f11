#include "alcove/path_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "alcove/report.hpp"

namespace alcove {

void write_path_csv(const Path& path, std::ostream& os) {
  os << "time,value\n";
  for (std::size_t j = 0; j < path.grid().nodes(); ++j)
    os << format_number(path.grid().time(j)) << ',' << format_number(path[j]) << '\n';
}

Path read_path_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("time,value", 0) != 0)
    throw std::invalid_argument("path csv: missing header time,value");
  std::vector<double> times, values;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("path csv: malformed row: " + line);
    try {
      times.push_back(std::stod(line.substr(0, comma)));
      values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("path csv: malformed row: " + line);
    }
  }
  if (times.size() < 2) throw std::invalid_argument("path csv: need at least two rows");
  if (times[0] != 0.0) throw std::invalid_argument("path csv: first time must be 0");
  const double step = times[1];
  for (std::size_t j = 1; j < times.size(); ++j)
    if (std::abs(times[j] - static_cast<double>(j) * step) > 1e-9 * (1.0 + times[j]))
      throw std::invalid_argument("path csv: times are not uniformly spaced");
  return Path(Grid(step, times.size() - 1), std::move(values));
}

nlohmann::json path_to_json(const Path& path) {
  return {{"step", path.grid().step()},
          {"count", path.grid().count()},
          {"values", std::vector<double>(path.values().begin(), path.values().end())}};
}

Path path_from_json(const nlohmann::json& j) {
  try {
    const double step = j.at("step").get<double>();
    auto values = j.at("values").get<std::vector<double>>();
    const std::size_t count = j.contains("count") ? j.at("count").get<std::size_t>() : values.size() - 1;
    return Path(Grid(step, count), std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("path json: ") + e.what());
  }
}

nlohmann::json strings_to_json(const StringVector& sv) {
  return {{"kind", to_string(sv.kind)}, {"m", sv.m}, {"xs", sv.xs}};
}

StringVector strings_from_json(const nlohmann::json& j) {
  StringVector sv;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "affine") sv.kind = StringKind::affine;
  else if (kind == "dihedral") sv.kind = StringKind::dihedral;
  else throw std::invalid_argument("strings json: unknown kind " + kind);
  sv.m = j.value("m", 0);
  sv.xs = j.at("xs").get<std::vector<double>>();
  return sv;
}

}  // namespace alcove
