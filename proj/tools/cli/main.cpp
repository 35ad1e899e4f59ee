#include "commands.hpp"

int main(int argc, char** argv) { return officelab::cli::main(argc, argv); }
