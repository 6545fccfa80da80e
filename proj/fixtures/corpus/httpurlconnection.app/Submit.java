package httpconn;

import java.net.HttpURLConnection;
import java.net.URL;

class Submit {
    void submit() throws Exception {
        URL u = new URL("http://httpconn.example/api/submit");
        HttpURLConnection c = (HttpURLConnection) u.openConnection();
        c.setRequestMethod("POST");
        c.setRequestProperty("X-Api-Key", "zz91");
    }

    void profile(String who) throws Exception {
        URL u = new URL("https://httpconn.example/api/profile?user=" + who);
    }
}
