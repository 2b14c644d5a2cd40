#include "biped5/model_params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "biped5/errors.hpp"
#include "biped5/format.hpp"

namespace biped5 {

double RobotParams::k(int i) const {
  return com_distance(links[static_cast<std::size_t>(i)]);
}

RobotParams default_params() {
  RobotParams p;
  //          mass    length  first_moment  inertia
  p.links = {{{3.255, 0.426, 0.164, 0.184},
              {7.000, 0.424, 0.366, 0.184},
              {24.850, 0.299, 1.530, 0.206},
              {7.000, 0.424, 0.366, 0.184},
              {3.255, 0.426, 0.164, 0.184}}};
  p.gravity = 9.81;
  return p;
}

double com_distance(const LinkParams& link) { return link.first_moment / link.mass; }

namespace {

std::string link_name(std::size_t i) { return "links[" + std::to_string(i) + "]"; }

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate_params(const RobotParams& params, bool require_symmetry) {
  for (std::size_t i = 0; i < params.links.size(); ++i) {
    const LinkParams& link = params.links[i];
    const std::string name = link_name(i);
    if (!positive_finite(link.mass)) throw ValidationError(name, "mass must be > 0");
    if (!positive_finite(link.length)) throw ValidationError(name, "length must be > 0");
    if (!positive_finite(link.inertia_com))
      throw ValidationError(name, "inertia must be > 0");
    if (!positive_finite(link.first_moment))
      throw ValidationError(name, "first_moment must be > 0");
    if (!(com_distance(link) < link.length))
      throw ValidationError(name, "centre of mass (first_moment/mass = " +
                                      format_double(com_distance(link)) +
                                      " m) lies beyond the link length");
  }
  if (!positive_finite(params.gravity)) throw ValidationError("gravity", "must be > 0");
  if (require_symmetry) {
    if (params.links[0] != params.links[4])
      throw ValidationError("links[4]", "differs from links[0] but symmetry is required");
    if (params.links[1] != params.links[3])
      throw ValidationError("links[3]", "differs from links[1] but symmetry is required");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double* field_slot(RobotParams& p, std::string_view key) {
  if (key == "gravity") return &p.gravity;
  if (key.size() < 7 || key.substr(0, 4) != "link" || key[5] != '.') return nullptr;
  const char idx = key[4];
  if (idx < '1' || idx > '5') return nullptr;
  LinkParams& link = p.links[static_cast<std::size_t>(idx - '1')];
  const std::string_view field = key.substr(6);
  if (field == "mass") return &link.mass;
  if (field == "length") return &link.length;
  if (field == "first_moment") return &link.first_moment;
  if (field == "inertia") return &link.inertia_com;
  return nullptr;
}

}  // namespace

RobotParams load_params(std::string_view config_text) {
  RobotParams p = default_params();
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= config_text.size()) {
    auto nl = config_text.find('\n', pos);
    if (nl == std::string_view::npos) nl = config_text.size();
    std::string_view line = config_text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected `key = value`");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    double* slot = field_slot(p, key);
    if (slot == nullptr) throw ParseError(line_no, std::string(key), "unknown key");
    if (!seen.insert(std::string(key)).second)
      throw ParseError(line_no, std::string(key), "duplicate key");

    double v = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || end != value.data() + value.size() || value.empty())
      throw ParseError(line_no, std::string(key),
                       "not a number: '" + std::string(value) + "'");
    *slot = v;
  }
  validate_params(p);
  return p;
}

RobotParams load_params_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open parameter file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_params(ss.str());
}

std::string serialize_params(const RobotParams& params) {
  std::string out = "# five-link biped parameters\n";
  out += "gravity = " + format_shortest(params.gravity) + "\n";
  for (std::size_t i = 0; i < params.links.size(); ++i) {
    const std::string prefix = "link" + std::to_string(i + 1) + ".";
    const LinkParams& link = params.links[i];
    out += prefix + "mass = " + format_shortest(link.mass) + "\n";
    out += prefix + "length = " + format_shortest(link.length) + "\n";
    out += prefix + "first_moment = " + format_shortest(link.first_moment) + "\n";
    out += prefix + "inertia = " + format_shortest(link.inertia_com) + "\n";
  }
  return out;
}

}  // namespace biped5
