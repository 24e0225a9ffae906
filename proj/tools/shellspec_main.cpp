#include "shellspec/cli.hpp"

int main(int argc, char** argv) { return shellspec::cli_main(argc, argv); }
