#include "vex/harness.hpp"

int main(int argc, char** argv) { return vex::cli_main(argc, argv); }
