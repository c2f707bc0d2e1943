fn main() { println!("{}", permanental::placeholder()); }
