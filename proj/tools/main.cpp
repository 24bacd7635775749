#include "gapulse/cli.hpp"

int main(int argc, char** argv) { return gapulse::run_cli(argc, argv); }
