#include "shilov/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "shilov/errors.hpp"

namespace shilov {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error("cannot replace " + path + ": " + ec.message());
}

namespace {

void append_row_jsonl(std::string& out, const WordRecord& r) {
  out += "{\"word\":\"";
  out += r.word;
  out += "\",\"l_S\":";
  out += std::to_string(r.l_S);
  out += ",\"l_S_conj\":";
  out += std::to_string(r.l_S_conj);
  out += ",\"tau_disc\":";
  out += format_double(r.tau_disc);
  out += ",\"tau_infty\":";
  out += format_double(r.tau_infty);
  out += ",\"tau_lower\":";
  out += format_double(r.tau_lower);
  out += ",\"tau_upper\":";
  out += format_double(r.tau_upper);
  out += "}\n";
}

}  // namespace

std::string experiment_jsonl(const WelldispReport& report) {
  std::string out;
  out.reserve(report.words.size() * 160);
  for (const WordRecord& r : report.words) append_row_jsonl(out, r);
  return out;
}

std::string experiment_csv(const WelldispReport& report) {
  std::string out = "word,l_S,l_S_conj,tau_disc,tau_infty,tau_lower,tau_upper\n";
  out.reserve(report.words.size() * 120 + out.size());
  for (const WordRecord& r : report.words) {
    out += r.word;
    out += ',';
    out += std::to_string(r.l_S);
    out += ',';
    out += std::to_string(r.l_S_conj);
    out += ',';
    out += format_double(r.tau_disc);
    out += ',';
    out += format_double(r.tau_infty);
    out += ',';
    out += format_double(r.tau_lower);
    out += ',';
    out += format_double(r.tau_upper);
    out += '\n';
  }
  return out;
}

void write_experiment(const WelldispReport& report,
                      const std::string& jsonl_path,
                      const std::string& csv_path) {
  write_file_atomic(jsonl_path, experiment_jsonl(report));
  write_file_atomic(csv_path, experiment_csv(report));
}

}  // namespace shilov
