#include "mlsmell/cli.hpp"

int main(int argc, char** argv) { return mlsmell::run_cli(argc, argv); }
