#include "pants_cli.hpp"

int main(int argc, char** argv) { return pants::cli::run(argc, argv); }
