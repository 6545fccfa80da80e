package guess;

import java.net.URL;
import java.net.URLConnection;

class Guess {
    String baseURL = "https://guess.example";
    String endpointURL = "https://guess.example/v2/data";

    void ping() throws Exception {
        String baseUrl;
        URL u = new URL(baseUrl + "/api/ping");
    }

    void data() throws Exception {
        String endpointUrl;
        URL v = new URL(endpointUrl + "?full=true");
    }
}
