int main(void) {
  int mode = get_mode();
  if (mode) {
      int* raw = 0;
      *raw = mode;
  }
  return 0;
}
