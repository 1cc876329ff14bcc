#include "qpic/cli.hpp"

int main(int argc, char** argv) { return qpic::cli::main(argc, argv); }
