#include "aot/cli.hpp"

int main(int argc, char** argv) { return aot::run_cli(argc, argv); }
