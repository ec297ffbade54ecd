/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return hierkey::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
