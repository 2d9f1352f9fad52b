#pragma once

#include <string>

#include "shilov/surface.hpp"

namespace shilov {

// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

// Writes through a sibling temp file and renames, so readers never observe a
// half-written report. Throws Error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

// One JSON object per word, keys: word, l_S, l_S_conj, tau_disc, tau_infty,
// tau_lower, tau_upper.
std::string experiment_jsonl(const WelldispReport& report);
// Same rows as CSV with a header line.
std::string experiment_csv(const WelldispReport& report);

void write_experiment(const WelldispReport& report,
                      const std::string& jsonl_path,
                      const std::string& csv_path);

}  // namespace shilov
