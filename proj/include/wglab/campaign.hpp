#ifndef WGLAB_CAMPAIGN_HPP
#define WGLAB_CAMPAIGN_HPP

#include <cstdint>
#include <string>

namespace wglab {

// One harness invocation.  Exit codes: 0 ok, 1 configured assertion failed
// (or run aborted mid-flight), 2 usage/config error.
struct Campaign {
  std::string id;
  std::string command;      // selftest | bilinear-sweep | measure-sweep |
                            // extremizer-check | nls-run | report
  std::string config_path;  // empty = defaults only
  uint64_t seed = 0;
  std::string output_dir;
  int workers = 1;
};

int run_campaign(const Campaign& c);

} // namespace wglab

#endif
