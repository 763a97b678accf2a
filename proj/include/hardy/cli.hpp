#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy {

/// Entry point of hardy_verify. Returns the process exit code: 0 when every
/// decided case passed, 2 on any failure, 1 on usage, config or runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// run(config path): executes a config file and writes its outputs.
int run_config_file(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace hardy
