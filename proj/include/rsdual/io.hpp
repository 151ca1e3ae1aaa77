#pragma once

#include <string>
#include <vector>

#include "rsdual/verify.hpp"

namespace rsdual {

// point container backing the CLI file formats; exactly one of the three
// vectors is populated, matching `space`
struct PointFile {
  int n = 0;
  double x = 0;
  std::string space;  // "P", "Phat" or "PhatC"
  std::vector<PointP> points_p;
  std::vector<PointPhat> points_phat;
  std::vector<PointPhatC> points_phatc;
};

PointFile read_point_file(const std::string& path);
void write_point_file(const std::string& path, const PointFile& pf);

std::string report_to_json(const std::vector<VerificationReport>& reports);

}  // namespace rsdual
