#include "cli/app.hpp"

int main(int argc, char** argv) { return qcovert::cli::run_cli(argc, argv); }
