#include <iostream>

#include "hopsynth/cli.h"

int main(int argc, char** argv) { return hopsynth::dispatch(argc, argv, std::cout, std::cerr); }
