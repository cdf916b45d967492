#include <iostream>
int main() { std::cout << "ramc-lab placeholder\n"; }
