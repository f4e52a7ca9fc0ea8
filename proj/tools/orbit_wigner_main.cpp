#include "ow/cli.hpp"

int main(int argc, char** argv) { return ow::cli::run(argc, argv); }
