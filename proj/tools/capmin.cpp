#include "capmin/cli.hpp"

int main(int argc, char** argv) { return capmin::cli::dispatch(argc, argv); }
