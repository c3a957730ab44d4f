#include "definetti/cli.hpp"

int main(int argc, char** argv) { return definetti::run(argc, argv); }
