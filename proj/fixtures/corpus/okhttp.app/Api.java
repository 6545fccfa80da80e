package ok;

import okhttp3.OkHttpClient;
import okhttp3.Request;
import okhttp3.RequestBody;

class Api {
    String base = "https://api.okhttp.example";

    void send(RequestBody body) {
        Request r = new Request.Builder()
                .url("https://api.okhttp.example/v2/messages?dry=false")
                .addHeader("Accept", "application/json")
                .post(body)
                .build();
    }

    void user(String id) {
        Request r = new Request.Builder().url(base + "/v2/users/" + id).get().build();
    }

    void dynamic(String target) {
        Request r = new Request.Builder().url(target).build();
    }
}
