#include "trapdoor/harness/cli.hpp"

int main(int argc, char** argv) { return trapdoor::run_cli(argc, argv); }
