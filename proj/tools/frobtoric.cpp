#include "frobtoric/cli.hpp"

int main(int argc, char** argv) { return frobtoric::cli::run(argc, argv); }
