package cred;

import com.google.gson.Gson;
import java.net.URL;
import javax.net.ssl.HttpsURLConnection;

class Auth {
    void login() throws Exception {
        URL u = new URL("https://cred.example/login?password=hunter2");
    }

    void keyed() throws Exception {
        URL u = new URL("https://cred.example/api?apikey=AKIA123XYZ");
    }

    void page() throws Exception {
        URL u = new URL("https://cred.example/search?page=2");
    }

    void serialize(Gson gson) {
        Login login = new Login();
        gson.toJson(login);
    }
}
