#include "qre/cli.hpp"

int main(int argc, char** argv) { return qre::cli::run_cli(argc, argv); }
