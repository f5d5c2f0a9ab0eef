#include "chiraforce/cli.hpp"

int main(int argc, char** argv) { return chiraforce::run_cli(argc, argv); }
