#include "cbs/cli/commands.hpp"

int main(int argc, char** argv) { return cbs::cli::run(argc, argv); }
