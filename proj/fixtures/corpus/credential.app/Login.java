package cred;

class Login {
    String username = "admin";
    String password;
}
