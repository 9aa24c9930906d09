#include "golayfuzz/cli.hpp"

int main(int argc, char** argv) { return golayfuzz::cli::run(argc, argv); }
