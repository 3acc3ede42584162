// qfridge.cpp — Command-line entry point

#include "qfridge/cli/runner.hpp"

int main(int argc, char** argv) { return qfridge::cli::main_entry(argc, argv); }
