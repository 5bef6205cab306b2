#include "unmix/cli.hpp"

int main(int argc, char** argv) {
  return unmix::cli::run(argc, argv);
}
