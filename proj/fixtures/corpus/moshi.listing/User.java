package users;

class User {
    Address address;
    String name = "Bob";
}
