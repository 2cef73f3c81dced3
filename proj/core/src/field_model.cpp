#include "rotorshape/field_model.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "rotorshape/error.hpp"

namespace rotorshape {

std::array<double, AnalyticFieldModel::kParameterCount> AnalyticFieldModel::parameters() const {
  return {em,           e0,           amplitude[0], amplitude[1], amplitude[2],
          frequency[0], frequency[1], frequency[2], phase[0],     phase[1],
          phase[2],     sigma1,       sigma2};
}

void AnalyticFieldModel::set_parameters(const std::array<double, kParameterCount>& p) {
  em = p[0];
  e0 = p[1];
  for (int i = 0; i < 3; ++i) {
    amplitude[i] = p[2 + i];
    frequency[i] = p[5 + i];
    phase[i] = p[8 + i];
  }
  sigma1 = p[11];
  sigma2 = p[12];
}

AnalyticFieldModel AnalyticFieldModel::preset(std::string_view name) {
  AnalyticFieldModel m;
  if (name == "a") {
    m.em = 1.25e-4;
    m.e0 = -0.7876;
    m.amplitude = {1.36, 0.1679, 0.1259};
    m.frequency = {0.56, 15.54, 11.137};
    m.phase = {-0.0634, 1.082, 0.036};
    m.sigma1 = 0.063;
    m.sigma2 = 0.036;
    m.note = "sawtooth, CO, 30 K; Em as used for its robustness runs";
  } else if (name == "b") {
    m.em = 1.89e-4;
    m.e0 = -0.0228;
    m.amplitude = {0.7989, 0.1138, 0.0307};
    m.frequency = {1.0064, 8.3, 3.31};
    m.phase = {0.9631, 0.5906, -0.38};
    m.sigma1 = 0.0504;
    m.sigma2 = 0.05;
    m.note = "rectangular r=0.5, CO, 30 K";
  } else {
    throw InvalidArgument("unknown field model preset '" + std::string(name) + "'");
  }
  return m;
}

std::vector<std::string> AnalyticFieldModel::preset_names() { return {"a", "b"}; }

double AnalyticFieldModel::window(double s) const {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  if (s <= 0.5) return 1.0 - std::exp(-s / sigma1);
  return 1.0 - std::exp(-(1.0 - s) / sigma2);
}

double AnalyticFieldModel::value(double s) const {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  constexpr double pi = std::numbers::pi;
  double carrier = e0;
  for (int i = 0; i < 3; ++i) {
    carrier += amplitude[i] * std::sin(2.0 * pi * frequency[i] * s + pi * phase[i]);
  }
  return em * carrier * window(s);
}

double AnalyticFieldModel::periodic_value(double s) const {
  const double reduced = s - std::floor(s);
  return value(reduced);
}

namespace {

constexpr std::array<std::string_view, AnalyticFieldModel::kParameterCount> kKeys = {
    "Em", "E0", "E1", "E2", "E3", "f1/fr", "f2/fr", "f3/fr",
    "phi1/pi", "phi2/pi", "phi3/pi", "sigma1/Tr", "sigma2/Tr"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string to_key_value(const AnalyticFieldModel& model) {
  std::ostringstream out;
  if (!model.note.empty()) out << "# " << model.note << '\n';
  const auto p = model.parameters();
  char buf[64];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    out << kKeys[i] << " = " << buf << '\n';
  }
  return out.str();
}

AnalyticFieldModel parse_key_value(std::string_view text) {
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < kKeys.size(); ++i) index[kKeys[i]] = i;
  std::array<double, AnalyticFieldModel::kParameterCount> p{};
  std::array<bool, AnalyticFieldModel::kParameterCount> seen{};
  AnalyticFieldModel model;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (model.note.empty()) model.note = std::string(trim(line.substr(1)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("field model line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    const auto it = index.find(key);
    if (it == index.end()) throw InvalidArgument("field model: unknown key '" + std::string(key) + "'");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size() || !std::isfinite(v)) {
      throw InvalidArgument("field model: bad value for '" + std::string(key) + "'");
    }
    p[it->second] = v;
    seen[it->second] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InvalidArgument("field model: missing key '" + std::string(kKeys[i]) + "'");
  }
  model.set_parameters(p);
  return model;
}

}  // namespace rotorshape
