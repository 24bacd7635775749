#include "gapulse/sequence_io.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gapulse {

using nlohmann::json;

double snap12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

PulseSequence snap_sequence(const PulseSequence& seq) {
  PulseSequence out = seq;
  for (PulseGene& g : out.genes) {
    for (double& f : g.flips_rad) f = snap12(f);
    for (double& p : g.phases_rad) p = snap12(p);
    g.delay_s = snap12(g.delay_s);
  }
  return out;
}

std::string sequence_to_json(const PulseSequence& seq, const std::vector<int>& channel_map) {
  seq.validate();
  json genes = json::array();
  for (const PulseGene& g : seq.genes) {
    genes.push_back({{"flips", g.flips_rad},
                     {"phases", g.phases_rad},
                     {"delay_s", g.delay_s},
                     {"crusher", g.crusher_after}});
  }
  const json j{{"n_channels", seq.n_channels}, {"channel_map", channel_map}, {"genes", genes}};
  return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void bad_field(const std::string& field, const char* what) {
  throw std::runtime_error("sequence file: field '" + field + "' " + what);
}

template <typename T>
T require(const json& j, const std::string& field) {
  if (!j.contains(field)) bad_field(field, "is missing");
  try {
    return j.at(field).get<T>();
  } catch (const json::exception&) {
    bad_field(field, "has the wrong type");
  }
}

}  // namespace

PulseSequence sequence_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("sequence file: not valid JSON: ") + e.what());
  }
  PulseSequence seq;
  seq.n_channels = require<int>(j, "n_channels");
  const json genes = require<json>(j, "genes");
  if (!genes.is_array()) bad_field("genes", "has the wrong type");
  for (size_t i = 0; i < genes.size(); ++i) {
    const json& g = genes[i];
    const std::string at = "genes[" + std::to_string(i) + "].";
    PulseGene gene;
    if (!g.contains("flips")) bad_field(at + "flips", "is missing");
    if (!g.contains("phases")) bad_field(at + "phases", "is missing");
    if (!g.contains("delay_s")) bad_field(at + "delay_s", "is missing");
    if (!g.contains("crusher")) bad_field(at + "crusher", "is missing");
    try {
      gene.flips_rad = g.at("flips").get<std::vector<double>>();
      gene.phases_rad = g.at("phases").get<std::vector<double>>();
      gene.delay_s = g.at("delay_s").get<double>();
      gene.crusher_after = g.at("crusher").get<bool>();
    } catch (const json::exception&) {
      bad_field(at + "*", "has the wrong type");
    }
    seq.genes.push_back(std::move(gene));
  }
  try {
    seq.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("sequence file: ") + e.what());
  }
  return seq;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gapulse
