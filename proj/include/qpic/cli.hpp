#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpic::cli {

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace qpic::cli
