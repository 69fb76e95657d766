#include <iostream>

#include "dconn_cli/commands.hpp"

int main(int argc, char** argv) { return dconn::cli::run_cli(argc, argv, std::cout, std::cerr); }
