#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return uwr::cli::run(argc, argv, std::cout); }
