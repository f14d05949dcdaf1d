#include "margulis/io.hpp"

#include <cstdio>

#include <json.hpp>

namespace margulis {

using nlohmann::ordered_json;

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const char* sign_name(int sign) {
  return sign > 0 ? "positive" : (sign < 0 ? "negative" : "mixed");
}

}  // namespace

std::string spectrum_to_csv(const SpectrumTable& table) {
  std::string out = "class,word_length,alpha,ell\n";
  for (const SpectrumEntry& e : table.entries) {
    out += word_to_string(e.cls);
    out += ',';
    out += std::to_string(e.word_length);
    out += ',';
    out += fmt17(e.alpha);
    out += ',';
    out += fmt17(e.ell);
    out += '\n';
  }
  return out;
}

std::string spectrum_to_json(const SpectrumTable& table, int indent) {
  ordered_json j;
  j["schema_version"] = 1;
  j["type"] = "spectrum";
  j["rank"] = table.rank;
  j["max_len"] = table.max_len;
  j["classes"] = table.entries.size();
  j["complete_below"] = table.complete_below;
  j["sign"] = sign_name(table.sign);
  ordered_json entries = ordered_json::array();
  for (const SpectrumEntry& e : table.entries) {
    ordered_json r;
    r["class"] = word_to_string(e.cls);
    r["word_length"] = e.word_length;
    r["alpha"] = e.alpha;
    r["ell"] = e.ell;
    entries.push_back(r);
  }
  j["entries"] = entries;
  return j.dump(indent) + "\n";
}

std::string entropy_to_json(const EntropyEstimate& est, int indent) {
  ordered_json j;
  j["schema_version"] = 1;
  j["type"] = "entropy";
  j["h"] = est.h;
  j["stderr"] = est.stderr_;
  j["window"] = {est.window_lo, est.window_hi};
  j["grid_points"] = est.count_curve.size();
  j["r_squared"] = est.r_squared;
  j["entries_used"] = est.entries_used;
  j["complete_below"] = est.complete_below;
  ordered_json curve = ordered_json::array();
  for (const auto& [t, logn] : est.count_curve) curve.push_back({t, logn});
  j["count_curve"] = curve;
  return j.dump(indent) + "\n";
}

}  // namespace margulis
