int main(void) {
  int* cursor = next_cell();
  *cursor = 5;
  *cursor = 5;
  return 0;
}
