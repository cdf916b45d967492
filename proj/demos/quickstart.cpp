#include <iostream>
int main() { std::cout << "quickstart placeholder\n"; }
