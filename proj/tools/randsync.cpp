#include "randsync/cli.hpp"

int main(int argc, char** argv) { return randsync::cli::run(argc, argv); }
