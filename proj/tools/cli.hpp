#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gocoexist {

/// Command-line front end. `args` excludes the program name. Returns the
/// process exit status: 0 on success, 1 on configuration or runtime errors,
/// 2 on usage errors. Failures print exactly one line to `err`, of the form
/// `gocoexist: error: <category>: <message>`.
int cli_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gocoexist
