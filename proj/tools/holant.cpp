#include "holant/cli.hpp"

int main(int argc, char** argv) { return holant::cli_main(argc, argv); }
