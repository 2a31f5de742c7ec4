#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv)
{
  return noma_uav::app::dispatch(argc, argv, std::cout, std::cerr);
}
