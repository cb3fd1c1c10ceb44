#include "cocat/cli.hpp"

int main(int argc, char** argv) { return cocat::cli::run(argc, argv); }
