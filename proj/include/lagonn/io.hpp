#pragma once

#include <string>

namespace lagonn {

// Shortest round-trip decimal form, identical across runs and platforms that
// share IEEE doubles; used for every floating-point field written to disk.
std::string fmt_double(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
void ensure_dir(const std::string& path);

} // namespace lagonn
