#include "dustclear/cli.hpp"

int main(int argc, char** argv) { return dustclear::cli::run(argc, argv); }
