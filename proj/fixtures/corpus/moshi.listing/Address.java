package users;

class Address {
    String street;
    int number;
}
