#include "cli.hpp"

int main(int argc, char** argv) { return rankcp::cli::run(argc, argv); }
