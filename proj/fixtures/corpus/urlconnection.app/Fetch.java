package urlconn;

import java.net.URL;
import java.net.URLConnection;

class Fetch {
    void status() throws Exception {
        URL u = new URL("http://urlconn.example/api/status");
        URLConnection c = u.openConnection();
    }

    void data() throws Exception {
        URL u = new URL("https://urlconn.example/api/data?limit=50");
        URLConnection c = u.openConnection();
    }

    void guide() throws Exception {
        URL u = new URL("https://urlconn.example/docs/guide#intro#setup");
    }
}
