#include "coalbranch/cli.hpp"

int main(int argc, char** argv) { return coalbranch::run_cli(argc, argv); }
