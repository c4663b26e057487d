#ifndef BOHL_CLI_HPP
#define BOHL_CLI_HPP

#include <string>
#include <vector>

namespace bohl {

// Runs the command line front end. args excludes the program name.
// Exit codes: 0 ok, 1 computation error, 2 usage error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace bohl

#endif
