#include <iostream>

#include "fiberlift/cli.hpp"

int main(int argc, char** argv) { return fiberlift::main_entry(argc, argv, std::cout, std::cerr); }
