#include "symsplit/cli.hpp"

int main(int argc, char** argv) { return symsplit::run(argc, argv); }
