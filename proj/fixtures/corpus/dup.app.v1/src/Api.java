package dup;

import java.net.URL;
import java.net.URLConnection;

class Api {
    void ping() throws Exception {
        URL u = new URL("http://dup.example/api/v1");
    }
}
