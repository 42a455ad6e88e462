#include "rmkit/cli.hpp"

int main(int argc, char** argv) { return rmkit::cli::run(argc, argv); }
