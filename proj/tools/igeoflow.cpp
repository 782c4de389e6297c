#include "igeo/cli_config.hpp"

int main(int argc, char** argv) { return igeo::cli::run_main(argc, argv); }
