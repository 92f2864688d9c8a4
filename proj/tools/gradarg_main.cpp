#include "gradarg/cli.hpp"

int main(int argc, char** argv) { return gradarg::cli::main(argc, argv); }
