#ifndef WLAB_CLI_HPP
#define WLAB_CLI_HPP

#include <iosfwd>
#include <string>

#include "wlab/config.hpp"

namespace wlab::cli {

int run_cli(int argc, char** argv);

// commands return process exit codes: 0 ok, 2 check/construction failure,
// 3 I/O failure
int cmd_mesh(const RunConfig& cfg, std::ostream& out);
int cmd_diagnose(const RunConfig& cfg, std::ostream& out);
int cmd_kdv_hierarchy(int n_max, std::ostream& out);
int cmd_kdv_soliton(const RunConfig& cfg, std::ostream& out);
int cmd_kdv_agtest(const RunConfig& cfg, const std::string& which, std::ostream& out);
int cmd_flow(const RunConfig& cfg, std::ostream& out);
int cmd_fit_end(const RunConfig& cfg, std::ostream& out);

} // namespace wlab::cli

#endif
