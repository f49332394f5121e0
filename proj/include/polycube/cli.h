#pragma once

namespace polycube {

// exit codes: 0 success, 1 invalid labeling (validate), 2 input or format error
int cli_main(int argc, const char* const* argv);

} // namespace polycube
