#include "fea/cli.hpp"

int main(int argc, char** argv) { return fea::cli::run(argc, argv); }
